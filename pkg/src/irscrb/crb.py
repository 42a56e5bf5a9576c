"""Fisher information and Cramer-Rao bounds for the per-target az/el angles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import AnglePair
from .irs_weights import IrsWeights
from .signal_model import Scenario, effective_manifold, source_samples

CONDITION_LIMIT = 1e12


class SingularFim(ArithmeticError):
    """FIM condition number exceeds the invertibility threshold."""


@dataclass(frozen=True)
class CrbInput:
    zbar: np.ndarray  # (rows, 2k)
    source_power: np.ndarray  # (k, k) Hermitian PSD
    noise_variance: float
    snapshots: int

    def __post_init__(self):
        k2 = self.zbar.shape[1]
        if k2 % 2 != 0 or self.source_power.shape != (k2 // 2, k2 // 2):
            raise ValueError("source power matrix must be k x k for 2k derivative columns")
        if not np.allclose(self.source_power, self.source_power.conj().T, atol=1e-12):
            raise ValueError("source power matrix must be Hermitian")
        if self.noise_variance <= 0:
            raise ValueError("noise variance must be positive")
        if self.snapshots < 1:
            raise ValueError("snapshot count must be >= 1")


@dataclass(frozen=True)
class PerTargetBound:
    var_az: float
    var_el: float
    rmse_az: float
    rmse_el: float


@dataclass(frozen=True)
class CrbResult:
    fim: np.ndarray  # (2k, 2k), interleaved (az_i, el_i)
    crb_matrix: np.ndarray  # (2k, 2k), interleaved
    per_target: tuple[PerTargetBound, ...]

    def block_ordered(self) -> tuple[np.ndarray, np.ndarray]:
        """FIM and CRB permuted to az-block / el-block layout."""
        k = self.fim.shape[0] // 2
        perm = np.concatenate([np.arange(0, 2 * k, 2), np.arange(1, 2 * k, 2)])
        return self.fim[np.ix_(perm, perm)], self.crb_matrix[np.ix_(perm, perm)]


def build_h(zbar: np.ndarray) -> np.ndarray:
    """H = Z^H Z over the interleaved derivative columns."""
    if not np.all(np.isfinite(zbar.view(float))):
        raise ValueError("derivative matrix must be finite")
    return zbar.conj().T @ zbar


def assemble_fim(inp: CrbInput) -> np.ndarray:
    """J = (2K / sigma^2) * Re[H (.) (S_f^T (x) ones_2x2)]."""
    h = build_h(inp.zbar)
    expansion = np.kron(inp.source_power.T, np.ones((2, 2)))
    fim = (2.0 * inp.snapshots / inp.noise_variance) * np.real(h * expansion)
    return 0.5 * (fim + fim.T)  # exact symmetry despite rounding


def crb_from_fim(fim: np.ndarray) -> CrbResult:
    """Invert the FIM and read out per-target variances/RMSEs."""
    cond = np.linalg.cond(fim)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularFim(f"FIM condition number {cond:.3e} exceeds {CONDITION_LIMIT:.0e}")
    crb = np.linalg.inv(fim)
    crb = 0.5 * (crb + crb.T)
    k = fim.shape[0] // 2
    bounds = []
    for i in range(k):
        var_az = float(crb[2 * i, 2 * i])
        var_el = float(crb[2 * i + 1, 2 * i + 1])
        if var_az < 0 or var_el < 0:
            raise SingularFim("negative variance on the CRB diagonal")
        bounds.append(
            PerTargetBound(var_az, var_el, float(np.sqrt(var_az)), float(np.sqrt(var_el)))
        )
    return CrbResult(fim, crb, tuple(bounds))


def sample_source_power(scenario: Scenario) -> np.ndarray:
    """S_f = (1/K) sum_k x(k) x(k)^H for the known source samples."""
    x = source_samples(scenario)
    return (x @ x.conj().T) / scenario.snapshots


def crb_for_scenario(
    scenario: Scenario,
    weights: IrsWeights,
    target_angles: list[AnglePair] | None = None,
    projected: bool = False,
) -> CrbResult:
    """Convenience pipeline: effective manifold -> FIM -> CRB.

    With projected=True the derivative columns are first projected onto the
    orthogonal complement of the effective steering columns, which yields the
    (more conservative) bound that discards absolute-gain information.
    """
    if target_angles is None:
        target_angles = scenario.target_angles()
    manifold = effective_manifold(scenario, weights, target_angles)
    zbar = manifold.zbar
    if projected:
        q, _ = np.linalg.qr(manifold.abar)
        zbar = zbar - q @ (q.conj().T @ zbar)
    inp = CrbInput(zbar, sample_source_power(scenario), scenario.noise_variance, scenario.snapshots)
    return crb_from_fim(assemble_fim(inp))
