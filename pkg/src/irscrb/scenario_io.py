"""Scenario file loading and validation (YAML, degrees/meters at the interface)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .geometry import AnglePair, IrsFrame, Position3, angles_from_irs
from .irs_weights import IrsWeights, design_weights
from .manifold import UlaSpec, UpaSpec
from .signal_model import Scenario, Target


class ScenarioFileError(ValueError):
    """Schema violation in a scenario document, with a field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class LoadedScenario:
    scenario: Scenario
    look: AnglePair
    radar_direction: AnglePair  # radar as seen from the IRS
    weights: IrsWeights


def _require(doc: dict, field: str, path: str):
    if field not in doc:
        raise ScenarioFileError(f"{path}{field}", "missing required field")
    return doc[field]


def _number(value, path: str, positive: bool = False) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ScenarioFileError(path, f"expected a number, got {value!r}")
    if positive and value <= 0:
        raise ScenarioFileError(path, f"must be positive, got {value}")
    return float(value)


def _integer(value, path: str, minimum: int = 1) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioFileError(path, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ScenarioFileError(path, f"must be >= {minimum}, got {value}")
    return value


def _vector3(value, path: str) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ScenarioFileError(path, f"expected [x, y, z], got {value!r}")
    return np.array([_number(v, f"{path}[{i}]") for i, v in enumerate(value)])


def _amplitude(value, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))
    raise ScenarioFileError(path, f"expected a real number or [re, im], got {value!r}")


def load_scenario(path: str | Path) -> LoadedScenario:
    """Parse and validate a scenario YAML file into model objects."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioFileError(str(path), f"cannot read scenario file: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioFileError(str(path), f"invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioFileError(str(path), "scenario document must be a mapping")

    wave_speed = _number(doc.get("wave_speed_mps", 3.0e8), "wave_speed_mps", positive=True)
    f0 = _number(_require(doc, "carrier_frequency_hz", ""), "carrier_frequency_hz", positive=True)
    wavelength = wave_speed / f0

    radar = _require(doc, "radar", "")
    if not isinstance(radar, dict):
        raise ScenarioFileError("radar", "expected a mapping")
    spacing = _number(radar.get("spacing_wavelengths", 0.5), "radar.spacing_wavelengths", positive=True)
    axis = _vector3(radar.get("axis", [1.0, 0.0, 0.0]), "radar.axis")
    radar_array = UlaSpec(
        _integer(_require(radar, "element_count", "radar."), "radar.element_count"),
        spacing * wavelength,
        tuple(axis),
    )
    radar_position = Position3.from_array(
        _vector3(radar.get("position_m", [0.0, 0.0, 0.0]), "radar.position_m")
    )

    irs = _require(doc, "irs", "")
    if not isinstance(irs, dict):
        raise ScenarioFileError("irs", "expected a mapping")
    irs_position = Position3.from_array(_vector3(_require(irs, "position_m", "irs."), "irs.position_m"))
    boresight = _vector3(irs.get("boresight", [1.0, 0.0, 0.0]), "irs.boresight")
    try:
        frame = IrsFrame.from_boresight(irs_position, boresight)
    except ValueError as exc:
        raise ScenarioFileError("irs.boresight", str(exc)) from exc
    irs_spacing = _number(irs.get("spacing_wavelengths", 0.5), "irs.spacing_wavelengths", positive=True)
    irs_spec = UpaSpec(
        _integer(_require(irs, "count_h", "irs."), "irs.count_h"),
        _integer(_require(irs, "count_v", "irs."), "irs.count_v"),
        irs_spacing * wavelength,
        irs_spacing * wavelength,
    )

    targets_doc = _require(doc, "targets", "")
    if not isinstance(targets_doc, list) or not targets_doc:
        raise ScenarioFileError("targets", "expected a non-empty list")
    targets = []
    for i, t in enumerate(targets_doc):
        if not isinstance(t, dict):
            raise ScenarioFileError(f"targets[{i}]", "expected a mapping")
        pos = Position3.from_array(
            _vector3(_require(t, "position_m", f"targets[{i}]."), f"targets[{i}].position_m")
        )
        targets.append(Target(pos, _amplitude(t.get("amplitude", 1.0), f"targets[{i}].amplitude")))

    waveform = doc.get("waveform", "constant")
    if waveform not in ("constant", "exponential"):
        raise ScenarioFileError("waveform", f"expected 'constant' or 'exponential', got {waveform!r}")

    try:
        scenario = Scenario(
            radar_array=radar_array,
            irs_spec=irs_spec,
            irs_frame=frame,
            wavelength=wavelength,
            targets=tuple(targets),
            noise_variance=_number(
                _require(doc, "noise_variance", ""), "noise_variance", positive=True
            ),
            snapshots=_integer(_require(doc, "snapshots", ""), "snapshots"),
            beam_count=_integer(doc.get("beams", 1), "beams"),
            radar_position=radar_position,
            waveform=waveform,
        )
    except ValueError as exc:
        raise ScenarioFileError("scenario", str(exc)) from exc

    look_doc = irs.get("look_direction_deg")
    if look_doc is None:
        try:
            look = angles_from_irs(frame, targets[0].position)
        except ValueError as exc:
            raise ScenarioFileError("targets[0].position_m", str(exc)) from exc
    else:
        if not isinstance(look_doc, dict):
            raise ScenarioFileError("irs.look_direction_deg", "expected {az: deg, el: deg}")
        try:
            look = AnglePair(
                math.radians(_number(_require(look_doc, "az", "irs.look_direction_deg."),
                                      "irs.look_direction_deg.az")),
                math.radians(_number(_require(look_doc, "el", "irs.look_direction_deg."),
                                      "irs.look_direction_deg.el")),
            )
        except ValueError as exc:
            raise ScenarioFileError("irs.look_direction_deg", str(exc)) from exc

    try:
        radar_dir = angles_from_irs(frame, radar_position)
    except ValueError as exc:
        raise ScenarioFileError("irs.boresight", f"radar not visible from the panel: {exc}") from exc

    weights = design_weights(irs_spec, look, radar_dir, wavelength)
    return LoadedScenario(scenario, look, radar_dir, weights)
