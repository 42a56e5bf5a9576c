"""Grid ML angle estimator and Monte Carlo harness for empirical RMSE."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import HALF_PI, AnglePair
from .irs_weights import IrsWeights
from .manifold import upa_phases
from .signal_model import (
    Scenario,
    SnapshotBatch,
    _link_scale,
    effective_manifold,
    synthesize,
)
from . import crb as crb_mod


@dataclass(frozen=True)
class AngleGrid:
    """Rectangular az/el search grid (radians), flattened with azimuth fastest."""

    az_points: np.ndarray
    el_points: np.ndarray

    def __post_init__(self):
        for pts, lo, hi, name in (
            (self.az_points, -HALF_PI, HALF_PI, "az"),
            (self.el_points, 0.0, HALF_PI, "el"),
        ):
            if len(pts) == 0:
                raise ValueError(f"{name} grid is empty")
            if np.any(np.diff(pts) <= 0):
                raise ValueError(f"{name} grid points must be strictly increasing")
            if pts[0] < lo - 1e-12 or pts[-1] > hi + 1e-12:
                raise ValueError(f"{name} grid exceeds the supported angular region")

    @staticmethod
    def around(center: AnglePair, half_width: float, step: float) -> "AngleGrid":
        """Restriction window around a look direction, clipped to the region."""
        n = int(round(half_width / step))
        offsets = np.arange(-n, n + 1) * step
        az = center.az + offsets
        el = center.el + offsets
        return AngleGrid(
            az[(az >= -HALF_PI) & (az <= HALF_PI)],
            el[(el >= 0.0) & (el <= HALF_PI)],
        )

    @property
    def size(self) -> int:
        return len(self.az_points) * len(self.el_points)


@dataclass(frozen=True)
class McConfig:
    trials: int
    master_seed: int = 20240
    refinement: str = "parabolic"  # or "none"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.refinement not in ("parabolic", "none"):
            raise ValueError(f"unknown refinement {self.refinement!r}")


@dataclass(frozen=True)
class McResult:
    empirical_rmse_az: float
    empirical_rmse_el: float
    crlb_rmse_az: float
    crlb_rmse_el: float
    trials: int


def build_dictionary(grid: AngleGrid, scenario: Scenario, weights: IrsWeights) -> np.ndarray:
    """Effective-manifold columns over all grid points (vectorized)."""
    spec = scenario.irs_spec
    lam = scenario.wavelength
    kappa = _link_scale(scenario)

    az = np.repeat(grid.az_points[np.newaxis, :], len(grid.el_points), axis=0).ravel()
    el = np.repeat(grid.el_points[:, np.newaxis], len(grid.az_points), axis=1).ravel()

    kd_h = 2 * math.pi / lam * spec.spacing_h
    kd_v = 2 * math.pi / lam * spec.spacing_v
    pc = np.tile(np.arange(spec.count_h) - (spec.count_h - 1) / 2.0, spec.count_v)
    qc = np.repeat(np.arange(spec.count_v) - (spec.count_v - 1) / 2.0, spec.count_h)
    phase = kd_h * np.outer(pc, np.sin(az) * np.cos(el)) + kd_v * np.outer(qc, np.sin(el))
    a = np.exp(1j * phase)

    look_phase, _, _ = upa_phases(spec, weights.design_look, lam, centered=True)
    g = np.exp(-1j * look_phase) @ a  # a_c(look)^H a_c(psi_z) for every z
    return kappa * g[np.newaxis, :] * (weights.diagonal[:, np.newaxis] * a)


def _parabolic_offset(t_minus: float, t_0: float, t_plus: float) -> float:
    denom = t_minus - 2.0 * t_0 + t_plus
    if denom >= 0.0:  # not a proper local maximum; keep the grid point
        return 0.0
    offset = 0.5 * (t_minus - t_plus) / denom
    return float(np.clip(offset, -1.0, 1.0))


def _peak_angles(statistic: np.ndarray, grid: AngleGrid, refinement: str) -> AnglePair:
    """Locate (and optionally refine) the statistic peak on the grid."""
    t = statistic.reshape(len(grid.el_points), len(grid.az_points))
    ie, ia = np.unravel_index(int(np.argmax(t)), t.shape)
    az = grid.az_points[ia]
    el = grid.el_points[ie]
    if refinement == "parabolic":
        if 0 < ia < t.shape[1] - 1:
            step = grid.az_points[ia + 1] - grid.az_points[ia]
            az = az + step * _parabolic_offset(t[ie, ia - 1], t[ie, ia], t[ie, ia + 1])
        if 0 < ie < t.shape[0] - 1:
            step = grid.el_points[ie + 1] - grid.el_points[ie]
            el = el + step * _parabolic_offset(t[ie - 1, ia], t[ie, ia], t[ie + 1, ia])
    return AnglePair(float(az), float(el))


def ml_statistic(batch: SnapshotBatch, dictionary: np.ndarray) -> np.ndarray:
    """Matched-subspace statistic sum_k |a^H y(k)|^2 / ||a||^2 per grid column."""
    proj = dictionary.conj().T @ batch.observations  # (G, K)
    norms = np.sum(np.abs(dictionary) ** 2, axis=0)
    return np.sum(np.abs(proj) ** 2, axis=1) / norms


def ml_estimate(
    batch: SnapshotBatch,
    dictionary: np.ndarray,
    grid: AngleGrid,
    refinement: str = "none",
) -> AnglePair:
    """Single-target ML grid estimate from a snapshot batch."""
    if dictionary.shape[1] != grid.size:
        raise ValueError("dictionary was not built on this grid")
    return _peak_angles(ml_statistic(batch, dictionary), grid, refinement)


def run_monte_carlo(
    scenario: Scenario,
    weights: IrsWeights,
    true_angle: AnglePair,
    grid: AngleGrid,
    cfg: McConfig,
) -> McResult:
    """Seeded Monte Carlo trials of synthesize -> ML estimate, plus the CRLB.

    Trial t draws its noise from seed master_seed XOR t, so results are
    deterministic and trials are independent.
    """
    if len(scenario.targets) != 1:
        raise ValueError("Monte Carlo harness supports single-target scenarios only")
    manifold = effective_manifold(scenario, weights, [true_angle])
    dictionary = build_dictionary(grid, scenario, weights)

    # The statistic only sees observations through the dictionary's column
    # space; project once onto an orthonormal basis of it to keep trials cheap.
    u, s, _ = np.linalg.svd(dictionary, full_matrices=False)
    q = u[:, s > s[0] * 1e-12]
    qz = q.conj().T @ dictionary  # (r, G)
    norms = np.sum(np.abs(dictionary) ** 2, axis=0)

    sq_err = np.zeros(2)
    for t in range(cfg.trials):
        batch = synthesize(scenario, manifold, seed=cfg.master_seed ^ t)
        w = q.conj().T @ batch.observations  # (r, K)
        r_w = w @ w.conj().T
        statistic = np.real(np.sum(qz.conj() * (r_w @ qz), axis=0)) / norms
        est = _peak_angles(statistic, grid, cfg.refinement)
        sq_err += [(est.az - true_angle.az) ** 2, (est.el - true_angle.el) ** 2]
    rmse = np.sqrt(sq_err / cfg.trials)

    bound = crb_mod.crb_for_scenario(scenario, weights, [true_angle]).per_target[0]
    return McResult(
        float(rmse[0]), float(rmse[1]), bound.rmse_az, bound.rmse_el, cfg.trials
    )
