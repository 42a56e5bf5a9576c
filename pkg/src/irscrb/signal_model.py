"""Effective observation operator and snapshot synthesis for the IRS path.

The observation model is the aperture-translated form of the reflected link:
the IRS panel acts as a displaced receive aperture whose signal reaches the
radar through the designed reflection weights and the (line-of-sight,
rank-one) IRS-to-radar channel.  Each effective manifold column is

    abar(psi) = kappa * g(psi) * (d (*) a_c(psi))

where a_c is the centroid-referenced panel steering vector, d the weight
diagonal, g(psi) the complex alignment gain between the panel response and
the design look direction, and kappa collects the beamspace/channel link
budget.  The column norm equals the energy the literal beamspace pipeline
would deliver, while the panel dimensions are retained so that azimuth and
elevation stay jointly identifiable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .geometry import AnglePair, IrsFrame, Position3, angles_from_irs
from .irs_weights import IrsWeights
from .manifold import UlaSpec, UpaSpec, ula_steering_cos, upa_phases, upa_steering

NEG_INF_DB = float("-inf")


class RankDeficientWarning(UserWarning):
    """Effective manifold columns are (numerically) linearly dependent."""


@dataclass(frozen=True)
class Target:
    position: Position3
    amplitude: complex


@dataclass(frozen=True)
class Scenario:
    """Full scene description for bound computation and simulation."""

    radar_array: UlaSpec
    irs_spec: UpaSpec
    irs_frame: IrsFrame
    wavelength: float
    targets: tuple[Target, ...]
    noise_variance: float
    snapshots: int
    beam_count: int = 1
    radar_position: Position3 = field(default_factory=lambda: Position3(0.0, 0.0, 0.0))
    waveform: str = "constant"  # or "exponential"
    waveform_frequency: float = 0.05  # cycles/snapshot, exponential waveform only

    def __post_init__(self):
        if not self.targets:
            raise ValueError("scenario needs at least one target")
        if self.noise_variance <= 0:
            raise ValueError("noise variance must be positive")
        if self.snapshots < 1:
            raise ValueError("snapshot count must be >= 1")
        if not (1 <= self.beam_count <= self.radar_array.element_count):
            raise ValueError("beam count must be in [1, element count]")
        if self.waveform not in ("constant", "exponential"):
            raise ValueError(f"unknown waveform {self.waveform!r}")

    def target_angles(self) -> list[AnglePair]:
        return [angles_from_irs(self.irs_frame, t.position) for t in self.targets]


@dataclass(frozen=True)
class EffectiveManifold:
    """Effective steering columns and their angle-derivative columns."""

    abar: np.ndarray  # (rows, k)
    zbar: np.ndarray  # (rows, 2k), interleaved (az_i, el_i)

    def __post_init__(self):
        if self.zbar.shape[1] != 2 * self.abar.shape[1]:
            raise ValueError("zbar must have twice the columns of abar")


@dataclass(frozen=True)
class SnapshotBatch:
    observations: np.ndarray  # (rows, K)
    source_samples: np.ndarray  # (k, K)
    seed: int


def beamspace_matrix(
    radar_array: UlaSpec, irs_direction: AnglePair, beam_count: int, wavelength: float
) -> np.ndarray:
    """Unit-norm conjugate-steering rows pointed at the IRS, offset by half a
    beamwidth each so adjacent beams overlap."""
    m_r = radar_array.element_count
    if not (1 <= beam_count <= m_r):
        raise ValueError("beam count must be in [1, element count]")
    half_bw = wavelength / (2.0 * m_r * radar_array.spacing)  # sin-space half beamwidth
    base = math.sin(irs_direction.az) * math.cos(irs_direction.el)
    rows = []
    for i in range(beam_count):
        offset = (i - (beam_count - 1) / 2.0) * half_bw
        cosine = float(np.clip(base + offset, -1.0, 1.0))
        rows.append(np.conj(ula_steering_cos(radar_array, cosine, wavelength)) / math.sqrt(m_r))
    return np.stack(rows)


def irs_direction_from_radar(radar_array: UlaSpec, radar_pos: Position3, irs_pos: Position3) -> AnglePair:
    """Bearing of the IRS as seen by the radar ULA (direction-cosine azimuth)."""
    rel = irs_pos.as_array() - radar_pos.as_array()
    n = np.linalg.norm(rel)
    if n == 0:
        raise ValueError("IRS and radar are co-located")
    cosine = float(rel @ radar_array.axis_array / n)
    return AnglePair(math.asin(np.clip(cosine, -1.0, 1.0)), 0.0)


def irs_to_radar_channel(
    radar_array: UlaSpec,
    irs_spec: UpaSpec,
    irs_frame: IrsFrame,
    radar_pos: Position3,
    wavelength: float,
) -> np.ndarray:
    """Rank-one far-field LoS channel F between IRS elements and radar elements."""
    rel = irs_frame.origin.as_array() - radar_pos.as_array()
    distance = np.linalg.norm(rel)
    if distance == 0:
        raise ValueError("IRS and radar are co-located")
    cosine = float(rel @ radar_array.axis_array / distance)
    a_radar = ula_steering_cos(radar_array, cosine, wavelength)
    radar_from_irs = angles_from_irs(irs_frame, radar_pos)
    a_irs = upa_steering(irs_spec, radar_from_irs, wavelength)
    amplitude = wavelength / (4.0 * math.pi * distance)
    return amplitude * np.outer(a_radar, a_irs)


def _centered_response(spec: UpaSpec, angles: AnglePair, wavelength: float):
    phase, d_az, d_el = upa_phases(spec, angles, wavelength, centered=True)
    a = np.exp(1j * phase)
    return a, 1j * d_az * a, 1j * d_el * a


def _link_scale(scenario: Scenario) -> float:
    """kappa: per-column scale from beamspace and IRS-to-radar channel."""
    w = beamspace_matrix(
        scenario.radar_array,
        irs_direction_from_radar(scenario.radar_array, scenario.radar_position, scenario.irs_frame.origin),
        scenario.beam_count,
        scenario.wavelength,
    )
    f = irs_to_radar_channel(
        scenario.radar_array,
        scenario.irs_spec,
        scenario.irs_frame,
        scenario.radar_position,
        scenario.wavelength,
    )
    return float(np.linalg.norm(w @ f)) / scenario.irs_spec.size


def effective_manifold(
    scenario: Scenario, weights: IrsWeights, target_angles: list[AnglePair]
) -> EffectiveManifold:
    """Columns abar(psi_i) and interleaved derivative columns for each target."""
    spec = scenario.irs_spec
    lam = scenario.wavelength
    kappa = _link_scale(scenario)
    a_look, _, _ = _centered_response(spec, weights.design_look, lam)

    k = len(target_angles)
    abar = np.empty((spec.size, k), dtype=complex)
    zbar = np.empty((spec.size, 2 * k), dtype=complex)
    for i, psi in enumerate(target_angles):
        a, da, de = _centered_response(spec, psi, lam)
        w_col = weights.diagonal * a
        g = np.vdot(a_look, a)
        dg_az = np.vdot(a_look, da)
        dg_el = np.vdot(a_look, de)
        abar[:, i] = kappa * g * w_col
        zbar[:, 2 * i] = kappa * (dg_az * w_col + g * weights.diagonal * da)
        zbar[:, 2 * i + 1] = kappa * (dg_el * w_col + g * weights.diagonal * de)

    if k > 1:
        s = np.linalg.svd(abar, compute_uv=False)
        if s[-1] <= 1e-10 * s[0]:
            warnings.warn(
                "effective manifold columns are rank deficient (coincident targets?)",
                RankDeficientWarning,
            )
    return EffectiveManifold(abar, zbar)


def source_samples(scenario: Scenario) -> np.ndarray:
    """Known deterministic source matrix x(k), one row per target."""
    k_samples = np.arange(scenario.snapshots)
    if scenario.waveform == "constant":
        s = np.ones(scenario.snapshots, dtype=complex)
    else:
        s = np.exp(2j * math.pi * scenario.waveform_frequency * k_samples)
    amps = np.array([t.amplitude for t in scenario.targets], dtype=complex)
    return np.outer(amps, s)


def synthesize(scenario: Scenario, manifold: EffectiveManifold, seed: int) -> SnapshotBatch:
    """Noisy snapshots: abar @ x + circular complex Gaussian noise."""
    x = source_samples(scenario)
    rng = np.random.default_rng(seed)
    shape = (manifold.abar.shape[0], scenario.snapshots)
    scale = math.sqrt(scenario.noise_variance / 2.0)
    noise = scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return SnapshotBatch(manifold.abar @ x + noise, x, seed)


def snr_of(scenario: Scenario, manifold: EffectiveManifold) -> float:
    """Post-link per-element average SNR in dB; -inf for zero signal."""
    signal = manifold.abar @ source_samples(scenario)
    power = float(np.mean(np.abs(signal) ** 2))
    if power == 0.0:
        return NEG_INF_DB
    return 10.0 * math.log10(power / scenario.noise_variance)
