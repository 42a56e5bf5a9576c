"""3-D scene bookkeeping: positions, path delays, and IRS-frame angle conversions.

All positions live in the radar (global) coordinate frame with the radar at
the origin.  The IRS panel carries its own right-handed orthonormal frame
(boresight, horizontal, vertical); targets are described from the panel by an
azimuth measured in the boresight-horizontal plane and an elevation above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2.0


class GeometryError(ValueError):
    """Base class for geometric precondition violations."""


class TargetBehindPanel(GeometryError):
    """Target direction has a non-positive boresight component."""


class OutOfRangeAngle(GeometryError):
    """Resolved angle falls outside the supported angular region."""


class NegativeLeg(GeometryError):
    """Range decomposition produced a negative path leg."""


@dataclass(frozen=True)
class Position3:
    """Point in the radar coordinate frame, meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise GeometryError(f"position components must be finite, got {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @staticmethod
    def from_array(v) -> "Position3":
        v = np.asarray(v, dtype=float)
        return Position3(float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True)
class AnglePair:
    """Azimuth/elevation pair in radians, az in [-pi/2, pi/2], el in [0, pi/2]."""

    az: float
    el: float

    def __post_init__(self):
        if not (-HALF_PI - 1e-12 <= self.az <= HALF_PI + 1e-12):
            raise OutOfRangeAngle(f"azimuth {self.az} outside [-pi/2, pi/2]")
        if not (-1e-12 <= self.el <= HALF_PI + 1e-12):
            raise OutOfRangeAngle(f"elevation {self.el} outside [0, pi/2]")


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise GeometryError("zero vector has no direction")
    return v / n


@dataclass(frozen=True)
class IrsFrame:
    """IRS panel frame: origin plus orthonormal (boresight, horizontal, vertical).

    The vertical axis is chosen with a nonnegative global-z component so that
    elevation is measured upward.
    """

    origin: Position3
    boresight: np.ndarray
    horizontal: np.ndarray
    vertical: np.ndarray

    def __post_init__(self):
        basis = np.stack([self.boresight, self.horizontal, self.vertical])
        if not np.allclose(basis @ basis.T, np.eye(3), atol=1e-12):
            raise GeometryError("frame basis is not orthonormal")
        if self.vertical[2] < -1e-12:
            raise GeometryError("vertical axis must not point below the global horizon")

    @staticmethod
    def from_boresight(origin: Position3, boresight) -> "IrsFrame":
        """Build the panel frame from its boresight direction.

        horizontal = normalize(global_z x boresight), vertical = boresight x
        horizontal; this keeps the triad right-handed with vertical pointing
        up.  A boresight along global z has no unique horizontal and is
        rejected.
        """
        b = _unit(np.asarray(boresight, dtype=float))
        z = np.array([0.0, 0.0, 1.0])
        h = np.cross(z, b)
        if np.linalg.norm(h) < 1e-9:
            raise GeometryError("boresight may not be (anti)parallel to global z")
        h = _unit(h)
        v = np.cross(b, h)
        return IrsFrame(origin, b, h, v)


def path_delay(radar: Position3, target: Position3, irs: Position3, c: float) -> float:
    """Total delay of the radar -> target -> IRS -> radar path, seconds."""
    if c <= 0:
        raise GeometryError(f"wave speed must be positive, got {c}")
    r, t, i = radar.as_array(), target.as_array(), irs.as_array()
    legs = (
        np.linalg.norm(t - r)
        + np.linalg.norm(t - i)
        + np.linalg.norm(i - r)
    )
    return float(legs / c)


def angles_from_irs(frame: IrsFrame, target: Position3) -> AnglePair:
    """Azimuth/elevation of a target as seen from the IRS frame."""
    rel = target.as_array() - frame.origin.as_array()
    rng = np.linalg.norm(rel)
    if rng == 0.0:
        raise GeometryError("target coincides with the IRS origin")
    u_bore = float(rel @ frame.boresight)
    u_h = float(rel @ frame.horizontal)
    u_v = float(rel @ frame.vertical)
    if u_bore <= 0.0:
        raise TargetBehindPanel(f"boresight component {u_bore} <= 0")
    el = math.asin(np.clip(u_v / rng, -1.0, 1.0))
    if el < -1e-12:
        raise OutOfRangeAngle(f"elevation {el} below the panel's horizontal plane")
    az = math.atan2(u_h, u_bore)
    return AnglePair(az, max(el, 0.0))


def position_from_irs_estimate(frame: IrsFrame, angles: AnglePair, range_from_irs: float) -> Position3:
    """Invert angles_from_irs: place a target at the given IRS-frame bearing and range."""
    if range_from_irs <= 0:
        raise GeometryError(f"range must be positive, got {range_from_irs}")
    ca, sa = math.cos(angles.az), math.sin(angles.az)
    ce, se = math.cos(angles.el), math.sin(angles.el)
    direction = ce * (ca * frame.boresight + sa * frame.horizontal) + se * frame.vertical
    return Position3.from_array(frame.origin.as_array() + range_from_irs * direction)


def split_range(total_range: float, range_irs_radar: float, target_radar_range: float) -> float:
    """IRS-target leg given total path length and the two known legs."""
    if range_irs_radar < 0:
        raise GeometryError(f"IRS-radar range must be nonnegative, got {range_irs_radar}")
    if total_range <= range_irs_radar:
        raise GeometryError(
            f"total range {total_range} must exceed the IRS-radar range {range_irs_radar}"
        )
    leg = total_range - target_radar_range - range_irs_radar
    if leg < 0:
        raise NegativeLeg(f"inferred IRS-target leg is negative: {leg}")
    return leg
