"""Phase-only IRS reflection weights redirecting a look direction toward the radar."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import AnglePair
from .manifold import UpaSpec, upa_steering


@dataclass(frozen=True)
class IrsWeights:
    """Diagonal of the reflection matrix plus the two design directions."""

    diagonal: np.ndarray
    design_look: AnglePair
    design_radar: AnglePair

    def __post_init__(self):
        if not np.allclose(np.abs(self.diagonal), 1.0, atol=1e-12):
            raise ValueError("IRS weights must be unit modulus")


def design_weights(
    spec: UpaSpec, look: AnglePair, radar_dir: AnglePair, wavelength: float
) -> IrsWeights:
    """Conjugate-phase design: entry l = conj(a(look)_l) * conj(a(radar)_l).

    Satisfies a(look)_l * d_l * a(radar)_l = 1 elementwise, so energy arriving
    from the look direction leaves coherently toward the radar.
    """
    a_look = upa_steering(spec, look, wavelength)
    a_radar = upa_steering(spec, radar_dir, wavelength)
    return IrsWeights(np.conj(a_look) * np.conj(a_radar), look, radar_dir)


def mismatch_gain(
    weights: IrsWeights, spec: UpaSpec, actual_target: AnglePair, wavelength: float
) -> float:
    """|a(radar)^T D a(actual)|: coherent gain toward the radar for a target
    at the given direction.  Equals the element count when the target sits
    exactly at the design look direction and is never larger."""
    a_radar = upa_steering(spec, weights.design_radar, wavelength)
    a_actual = upa_steering(spec, actual_target, wavelength)
    return float(np.abs(np.sum(a_radar * weights.diagonal * a_actual)))
