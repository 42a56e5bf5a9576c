"""Cramer-Rao bounds and Monte Carlo validation for IRS-assisted radar angle estimation."""

from .crb import (
    CrbInput,
    CrbResult,
    PerTargetBound,
    SingularFim,
    assemble_fim,
    build_h,
    crb_for_scenario,
    crb_from_fim,
    sample_source_power,
)
from .estimator import (
    AngleGrid,
    McConfig,
    McResult,
    build_dictionary,
    ml_estimate,
    ml_statistic,
    run_monte_carlo,
)
from .geometry import (
    AnglePair,
    GeometryError,
    IrsFrame,
    NegativeLeg,
    OutOfRangeAngle,
    Position3,
    TargetBehindPanel,
    angles_from_irs,
    path_delay,
    position_from_irs_estimate,
    split_range,
)
from .irs_weights import IrsWeights, design_weights, mismatch_gain
from .manifold import (
    SteeringDerivatives,
    UlaSpec,
    UpaSpec,
    ula_steering,
    upa_steering,
    upa_steering_derivatives,
)
from .scenario_io import LoadedScenario, ScenarioFileError, load_scenario
from .signal_model import (
    EffectiveManifold,
    RankDeficientWarning,
    Scenario,
    SnapshotBatch,
    Target,
    beamspace_matrix,
    effective_manifold,
    irs_to_radar_channel,
    snr_of,
    source_samples,
    synthesize,
)
from .sweeps import (
    SWEEP_KINDS,
    SweepResult,
    SweepRow,
    SweepSpec,
    near_square_factors,
    run_sweep,
)

__all__ = [
    "AngleGrid",
    "AnglePair",
    "CrbInput",
    "CrbResult",
    "EffectiveManifold",
    "GeometryError",
    "IrsFrame",
    "IrsWeights",
    "LoadedScenario",
    "McConfig",
    "McResult",
    "NegativeLeg",
    "OutOfRangeAngle",
    "PerTargetBound",
    "Position3",
    "RankDeficientWarning",
    "SWEEP_KINDS",
    "Scenario",
    "ScenarioFileError",
    "SingularFim",
    "SnapshotBatch",
    "SteeringDerivatives",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "Target",
    "TargetBehindPanel",
    "UlaSpec",
    "UpaSpec",
    "angles_from_irs",
    "assemble_fim",
    "beamspace_matrix",
    "build_dictionary",
    "build_h",
    "crb_for_scenario",
    "crb_from_fim",
    "design_weights",
    "effective_manifold",
    "irs_to_radar_channel",
    "load_scenario",
    "mismatch_gain",
    "ml_estimate",
    "ml_statistic",
    "near_square_factors",
    "path_delay",
    "position_from_irs_estimate",
    "run_monte_carlo",
    "run_sweep",
    "sample_source_power",
    "snr_of",
    "source_samples",
    "split_range",
    "synthesize",
    "ula_steering",
    "upa_steering",
    "upa_steering_derivatives",
]
