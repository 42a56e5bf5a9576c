"""Parameter sweeps producing CRLB (and optionally empirical) RMSE curves."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .crb import SingularFim, crb_for_scenario
from .estimator import AngleGrid, McConfig, run_monte_carlo
from .geometry import AnglePair
from .irs_weights import IrsWeights, design_weights
from .manifold import UpaSpec
from .signal_model import Scenario, effective_manifold, snr_of

SWEEP_KINDS = ("snr", "snapshots", "irs_elements", "az_deviation", "el_deviation")


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    scenario: Scenario
    weights: IrsWeights
    start: float = 0.0
    stop: float = 0.0
    step: float = 1.0
    values: Optional[Sequence[float]] = None  # overrides start/stop/step
    mc_config: Optional[McConfig] = None  # empirical RMSE when set
    mc_grid_half_width: float = math.radians(2.0)
    mc_grid_step: float = math.radians(0.1)

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        if self.values is None and self.step <= 0:
            raise ValueError("step must be positive")
        if len(self.sweep_values()) == 0:
            raise ValueError("sweep range is empty")

    def sweep_values(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(max(count, 0))


@dataclass(frozen=True)
class SweepRow:
    x: float
    crlb_rmse_az: float
    crlb_rmse_el: float
    emp_rmse_az: Optional[float] = None
    emp_rmse_el: Optional[float] = None


@dataclass(frozen=True)
class SweepResult:
    kind: str
    rows: tuple[SweepRow, ...]

    @property
    def has_empirical(self) -> bool:
        return any(r.emp_rmse_az is not None for r in self.rows)


def near_square_factors(n: int) -> tuple[int, int]:
    """Factor n = l_h * l_v with l_h >= l_v and |l_h - l_v| minimal."""
    if n < 1:
        raise ValueError("element count must be positive")
    l_v = int(math.isqrt(n))
    while n % l_v != 0:
        l_v -= 1
    return n // l_v, l_v


def _point_setup(spec: SweepSpec, x: float) -> tuple[Scenario, IrsWeights, AnglePair]:
    """Scenario/weights/true-angle for one sweep value, varying one dimension."""
    scenario, weights = spec.scenario, spec.weights
    true_angle = scenario.target_angles()[0]

    if spec.kind == "snr":
        current = snr_of(scenario, effective_manifold(scenario, weights, [true_angle]))
        signal_power = scenario.noise_variance * 10.0 ** (current / 10.0)
        scenario = dataclasses.replace(
            scenario, noise_variance=signal_power * 10.0 ** (-x / 10.0)
        )
    elif spec.kind == "snapshots":
        scenario = dataclasses.replace(scenario, snapshots=max(int(round(x)), 1))
    elif spec.kind == "irs_elements":
        l_h, l_v = near_square_factors(int(round(x)))
        base = scenario.irs_spec
        panel = UpaSpec(l_h, l_v, base.spacing_h, base.spacing_v)
        scenario = dataclasses.replace(scenario, irs_spec=panel)
        weights = design_weights(
            panel, weights.design_look, weights.design_radar, scenario.wavelength
        )
    elif spec.kind == "az_deviation":
        true_angle = AnglePair(weights.design_look.az + math.radians(x), weights.design_look.el)
    elif spec.kind == "el_deviation":
        true_angle = AnglePair(weights.design_look.az, weights.design_look.el + math.radians(x))
    return scenario, weights, true_angle


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the CRLB (and optionally Monte Carlo RMSE) over the sweep."""
    rows = []
    for x in spec.sweep_values():
        scenario, weights, true_angle = _point_setup(spec, float(x))
        try:
            bound = crb_for_scenario(scenario, weights, [true_angle]).per_target[0]
        except SingularFim:
            rows.append(SweepRow(float(x), math.nan, math.nan))
            continue
        emp_az = emp_el = None
        if spec.mc_config is not None:
            grid = AngleGrid.around(true_angle, spec.mc_grid_half_width, spec.mc_grid_step)
            mc = run_monte_carlo(scenario, weights, true_angle, grid, spec.mc_config)
            emp_az, emp_el = mc.empirical_rmse_az, mc.empirical_rmse_el
        rows.append(SweepRow(float(x), bound.rmse_az, bound.rmse_el, emp_az, emp_el))
    return SweepResult(spec.kind, tuple(rows))
