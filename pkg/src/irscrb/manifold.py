"""Steering vectors for the radar ULA and IRS UPA, with analytic angle derivatives.

Phase convention: positive exponent, half-wavelength style direction cosines.
The horizontal panel dimension responds to sin(az)*cos(el), the vertical one
to sin(el).  Public steering vectors are referenced to element 0 (first entry
exactly 1); a centered reference is available for downstream signal models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import AnglePair


@dataclass(frozen=True)
class UlaSpec:
    """Uniform linear array: element count, spacing (m), orientation axis."""

    element_count: int
    spacing: float
    axis: tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if self.element_count < 1:
            raise ValueError("element_count must be >= 1")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    @property
    def axis_array(self) -> np.ndarray:
        a = np.asarray(self.axis, dtype=float)
        return a / np.linalg.norm(a)


@dataclass(frozen=True)
class UpaSpec:
    """Uniform planar array, count_h x count_v elements."""

    count_h: int
    count_v: int
    spacing_h: float
    spacing_v: float

    def __post_init__(self):
        if self.count_h < 1 or self.count_v < 1:
            raise ValueError("element counts must be >= 1")
        if self.spacing_h <= 0 or self.spacing_v <= 0:
            raise ValueError("spacings must be positive")

    @property
    def size(self) -> int:
        return self.count_h * self.count_v


class SteeringDerivatives(NamedTuple):
    d_az: np.ndarray
    d_el: np.ndarray


def ula_steering_cos(spec: UlaSpec, direction_cosine: float, wavelength: float) -> np.ndarray:
    """ULA response for a given direction cosine along the array axis."""
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    m = np.arange(spec.element_count)
    return np.exp(1j * (2 * math.pi / wavelength) * spec.spacing * direction_cosine * m)


def ula_steering(spec: UlaSpec, angles: AnglePair, wavelength: float) -> np.ndarray:
    """ULA steering vector; entry m = exp(j*2pi/lambda*m*d*sin(az)*cos(el))."""
    return ula_steering_cos(spec, math.sin(angles.az) * math.cos(angles.el), wavelength)


def upa_phases(
    spec: UpaSpec, angles: AnglePair, wavelength: float, centered: bool = False
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-element phase and its az/el rates for a UPA.

    Element order is row-major with the horizontal index fastest (vertical (x)
    horizontal Kronecker order).  With centered=True the phase reference sits
    at the panel centroid instead of element 0.
    """
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    kd_h = 2 * math.pi / wavelength * spec.spacing_h
    kd_v = 2 * math.pi / wavelength * spec.spacing_v
    p = np.arange(spec.count_h, dtype=float)
    q = np.arange(spec.count_v, dtype=float)
    if centered:
        p -= (spec.count_h - 1) / 2.0
        q -= (spec.count_v - 1) / 2.0
    pp = np.tile(p, spec.count_v)
    qq = np.repeat(q, spec.count_h)

    sa, ca = math.sin(angles.az), math.cos(angles.az)
    se, ce = math.sin(angles.el), math.cos(angles.el)
    phase = kd_h * pp * sa * ce + kd_v * qq * se
    d_az = kd_h * pp * ca * ce
    d_el = -kd_h * pp * sa * se + kd_v * qq * ce
    return phase, d_az, d_el


def upa_steering(spec: UpaSpec, angles: AnglePair, wavelength: float) -> np.ndarray:
    """UPA steering vector, Kronecker product (vertical factor (x) horizontal)."""
    phase, _, _ = upa_phases(spec, angles, wavelength)
    return np.exp(1j * phase)


def upa_steering_derivatives(spec: UpaSpec, angles: AnglePair, wavelength: float) -> SteeringDerivatives:
    """Analytic per-entry az/el derivatives of the UPA steering vector."""
    phase, d_az, d_el = upa_phases(spec, angles, wavelength)
    a = np.exp(1j * phase)
    return SteeringDerivatives(1j * d_az * a, 1j * d_el * a)
