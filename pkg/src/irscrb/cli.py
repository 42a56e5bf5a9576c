"""Command-line front end: scenario files in, CSV curves and reports out."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import crb as crb_mod
from .estimator import McConfig
from .geometry import AnglePair, angles_from_irs, position_from_irs_estimate
from .irs_weights import mismatch_gain
from .manifold import upa_steering, upa_steering_derivatives
from .scenario_io import LoadedScenario, ScenarioFileError, load_scenario
from .signal_model import effective_manifold, snr_of
from .sweeps import SweepResult, SweepSpec, run_sweep

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SINGULAR = 3

DEFAULT_SEED = 20240

_KIND_ALIASES = {
    "snr": "snr",
    "snapshots": "snapshots",
    "irs-elements": "irs_elements",
    "az-dev": "az_deviation",
    "el-dev": "el_deviation",
}

_DEFAULT_RANGES = {
    "snr": (-15.0, 15.0, 1.0),
    "irs_elements": (4.0, 100.0, 8.0),
    "az_deviation": (-10.0, 10.0, 0.5),
    "el_deviation": (-10.0, 10.0, 0.5),
}


def _fmt(value: float) -> str:
    return "nan" if value is None or (isinstance(value, float) and math.isnan(value)) else f"{value:.12g}"


def write_csv(result: SweepResult, path: Path) -> None:
    """Locale-independent CSV, degrees at the interface, LF endings."""
    header = "x,crlb_rmse_az_deg,crlb_rmse_el_deg"
    if result.has_empirical:
        header += ",emp_rmse_az_deg,emp_rmse_el_deg"
    lines = [header]
    for r in result.rows:
        cells = [
            _fmt(r.x),
            _fmt(math.degrees(r.crlb_rmse_az)),
            _fmt(math.degrees(r.crlb_rmse_el)),
        ]
        if result.has_empirical:
            cells.append(_fmt(math.degrees(r.emp_rmse_az) if r.emp_rmse_az is not None else math.nan))
            cells.append(_fmt(math.degrees(r.emp_rmse_el) if r.emp_rmse_el is not None else math.nan))
        lines.append(",".join(cells))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_crb(loaded: LoadedScenario) -> int:
    scenario = loaded.scenario
    angles = scenario.target_angles()
    manifold = effective_manifold(scenario, loaded.weights, angles)
    try:
        result = crb_mod.crb_for_scenario(scenario, loaded.weights, angles)
    except crb_mod.SingularFim as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR

    print(f"effective SNR: {snr_of(scenario, manifold):.2f} dB")
    print(f"FIM condition number: {np.linalg.cond(result.fim):.6g}")
    gain = mismatch_gain(loaded.weights, scenario.irs_spec, angles[0], scenario.wavelength)
    print(f"IRS gain toward first target: {gain:.2f} of {scenario.irs_spec.size}")
    for i, (bound, psi) in enumerate(zip(result.per_target, angles)):
        print(f"target {i}: az={math.degrees(psi.az):.3f} deg, el={math.degrees(psi.el):.3f} deg")
        print(f"  var(az) = {bound.var_az:.6e} rad^2, var(el) = {bound.var_el:.6e} rad^2")
        print(
            f"  CRLB-RMSE az = {bound.rmse_az:.6e} rad ({math.degrees(bound.rmse_az):.6e} deg), "
            f"el = {bound.rmse_el:.6e} rad ({math.degrees(bound.rmse_el):.6e} deg)"
        )
    return EXIT_OK


def cmd_sweep(loaded: LoadedScenario, args) -> int:
    kind = _KIND_ALIASES[args.kind]
    if args.from_ is not None or args.to is not None or args.step is not None:
        if args.from_ is None or args.to is None:
            print("error: --from and --to must be given together", file=sys.stderr)
            return EXIT_BAD_INPUT
        start, stop = args.from_, args.to
        step = args.step if args.step is not None else 1.0
    elif kind == "snapshots":
        values = np.unique(np.round(np.geomspace(100, 5000, 10)).astype(int))
        start = stop = 0.0
        step = 1.0
    else:
        start, stop, step = _DEFAULT_RANGES[kind]
    mc = McConfig(args.trials, master_seed=args.seed) if args.trials > 0 else None
    try:
        spec = SweepSpec(
            kind=kind,
            scenario=loaded.scenario,
            weights=loaded.weights,
            start=start,
            stop=stop,
            step=step,
            values=(values.tolist() if kind == "snapshots" and args.from_ is None else None),
            mc_config=mc,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    result = run_sweep(spec)
    out = Path(args.out) if args.out else Path(f"{args.kind}.csv")
    write_csv(result, out)
    print(f"wrote {out} ({len(result.rows)} rows)")
    if args.plot:
        from .plotting import render_sweep

        figure = render_sweep(result, out.with_suffix(".png"))
        print(f"wrote {figure}")
    return EXIT_OK


def _validate_checks(loaded: LoadedScenario):
    """Yield (name, status, detail) for the built-in property checks."""
    scenario = loaded.scenario
    spec = scenario.irs_spec
    lam = scenario.wavelength
    rng = np.random.default_rng(7)

    # Derivative oracle: analytic vs central finite differences.
    singular = any(psi.el > math.radians(89.9) for psi in scenario.target_angles())
    if singular:
        yield "steering-derivative oracle", "SKIP", "target at the manifold singularity el=90 deg"
    else:
        step = 1e-5
        worst = 0.0
        for _ in range(25):
            psi = AnglePair(rng.uniform(-1.4, 1.4), rng.uniform(0.0, math.radians(85.0)))
            dv = upa_steering_derivatives(spec, psi, lam)
            for axis, analytic in (("az", dv.d_az), ("el", dv.d_el)):
                plus = AnglePair(psi.az + step if axis == "az" else psi.az,
                                 psi.el + step if axis == "el" else psi.el)
                minus = AnglePair(psi.az - step if axis == "az" else psi.az,
                                  psi.el - step if axis == "el" else psi.el)
                fd = (upa_steering(spec, plus, lam) - upa_steering(spec, minus, lam)) / (2 * step)
                scale = max(float(np.max(np.abs(fd))), 1.0)
                worst = max(worst, float(np.max(np.abs(analytic - fd))) / scale)
        ok = worst < 1e-6
        yield "steering-derivative oracle", "PASS" if ok else "FAIL", f"max rel err {worst:.2e}"

    # IRS weight identity and coherent gain.
    w = loaded.weights
    a0 = upa_steering(spec, w.design_look, lam)
    ar = upa_steering(spec, w.design_radar, lam)
    residual = float(np.max(np.abs(a0 * w.diagonal * ar - 1.0)))
    gain = abs(np.sum(ar * w.diagonal * a0))
    ok = residual < 1e-12 and abs(gain - spec.size) <= 1e-9 * spec.size
    yield "IRS weight identity", "PASS" if ok else "FAIL", f"residual {residual:.2e}, gain {gain:.6f}"

    # FIM scaling laws.
    try:
        angles = scenario.target_angles()
        manifold = effective_manifold(scenario, w, angles)
        s_f = crb_mod.sample_source_power(scenario)
        base = crb_mod.assemble_fim(
            crb_mod.CrbInput(manifold.zbar, s_f, scenario.noise_variance, scenario.snapshots)
        )
        doubled = crb_mod.assemble_fim(
            crb_mod.CrbInput(manifold.zbar, s_f, scenario.noise_variance, 2 * scenario.snapshots)
        )
        noisier = crb_mod.assemble_fim(
            crb_mod.CrbInput(manifold.zbar, s_f, 10 * scenario.noise_variance, scenario.snapshots)
        )
        ok = np.array_equal(doubled, 2 * base) and np.allclose(noisier, base / 10, rtol=1e-14)
        yield "FIM scaling laws", "PASS" if ok else "FAIL", "J linear in K, J ~ 1/sigma^2"
    except ValueError as exc:
        yield "FIM scaling laws", "FAIL", str(exc)

    # Geometry round-trip.
    worst = 0.0
    for _ in range(200):
        psi = AnglePair(rng.uniform(-1.5, 1.5), rng.uniform(0.01, 1.5))
        rng_m = rng.uniform(1.0, 500.0)
        pos = position_from_irs_estimate(scenario.irs_frame, psi, rng_m)
        back = angles_from_irs(scenario.irs_frame, pos)
        worst = max(worst, abs(back.az - psi.az), abs(back.el - psi.el))
    ok = worst < 1e-9
    yield "geometry round-trip", "PASS" if ok else "FAIL", f"max angle err {worst:.2e} rad"


def cmd_validate(loaded: LoadedScenario) -> int:
    failed = False
    for name, status, detail in _validate_checks(loaded):
        print(f"[{status}] {name}: {detail}")
        failed = failed or status == "FAIL"
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irscrb",
        description="Cramer-Rao bounds for target angles in an IRS-assisted radar geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_crb = sub.add_parser("crb", help="report CRLB variances/RMSE for a scenario")
    p_crb.add_argument("scenario", help="path to scenario YAML file")

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep and write a CSV curve")
    p_sweep.add_argument("scenario", help="path to scenario YAML file")
    p_sweep.add_argument("kind", choices=sorted(_KIND_ALIASES))
    p_sweep.add_argument("--from", dest="from_", type=float, default=None)
    p_sweep.add_argument("--to", type=float, default=None)
    p_sweep.add_argument("--step", type=float, default=None)
    p_sweep.add_argument("--trials", type=int, default=0,
                         help="Monte Carlo trials per point (0 = CRLB only)")
    p_sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sweep.add_argument("--out", default=None, help="output CSV path")
    p_sweep.add_argument("--plot", action="store_true",
                         help="also render the curves to a PNG next to the CSV")

    p_val = sub.add_parser("validate", help="run built-in property checks on a scenario")
    p_val.add_argument("scenario", help="path to scenario YAML file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        loaded = load_scenario(args.scenario)
    except ScenarioFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if args.command == "crb":
        return cmd_crb(loaded)
    if args.command == "sweep":
        return cmd_sweep(loaded, args)
    return cmd_validate(loaded)


if __name__ == "__main__":
    sys.exit(main())
