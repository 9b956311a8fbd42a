"""Sideband entanglement analysis for a triply resonant OPO above threshold.

The package models the quantum sidebands of the pump, signal and idler beams
of a driven three-mode cavity as a linear Gaussian system, computes the output
covariance at a chosen analysis frequency, and evaluates partial-transpose
entanglement witnesses over all bipartitions of the six-mode register.
"""

from .analysis import (
    DEFAULT_SIGMA_GRID,
    Family,
    SweepPoint,
    WitnessEntry,
    WitnessTable,
    classify,
    enumerate_bipartitions,
    evaluate_point,
    sweep_sigma,
    witness_table,
)
from .config import ConfigError, RunConfig, parse_config, serialize
from .errors import (
    ConvergenceError,
    ModelError,
    SingularResponseError,
    SpectrumPairingError,
    UnstableOperatingPointError,
)
from .gaussian import (
    apply_symplectic,
    attenuation_channel,
    beam_splitter_symplectic,
    is_physical,
    log_negativity,
    marginal,
    partial_transpose,
    phase_rotation_symplectic,
    pt_witness,
    purity,
    symplectic_eigenvalues,
    symplectic_form,
    two_mode_squeeze_symplectic,
    vacuum,
)
from .modes import MODE_ORDER, N_SIDEBANDS, Bipartition, Carrier, ModeLabel, Sideband
from .opo import (
    DEFAULT_PHONON_COUPLING,
    MeanFields,
    OpoParams,
    PhononMode,
    apply_detection,
    build_langevin,
    default_phonon_modes,
    mean_fields,
    output_covariance,
    pump_threshold_amplitude,
    thermal_occupation,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "Carrier",
    "ConfigError",
    "ConvergenceError",
    "DEFAULT_PHONON_COUPLING",
    "DEFAULT_SIGMA_GRID",
    "Family",
    "MODE_ORDER",
    "MeanFields",
    "ModeLabel",
    "ModelError",
    "N_SIDEBANDS",
    "OpoParams",
    "PhononMode",
    "RunConfig",
    "Sideband",
    "SingularResponseError",
    "SpectrumPairingError",
    "SweepPoint",
    "UnstableOperatingPointError",
    "WitnessEntry",
    "WitnessTable",
    "apply_detection",
    "apply_symplectic",
    "attenuation_channel",
    "beam_splitter_symplectic",
    "build_langevin",
    "classify",
    "default_phonon_modes",
    "enumerate_bipartitions",
    "evaluate_point",
    "is_physical",
    "log_negativity",
    "marginal",
    "mean_fields",
    "output_covariance",
    "parse_config",
    "partial_transpose",
    "phase_rotation_symplectic",
    "pt_witness",
    "pump_threshold_amplitude",
    "purity",
    "serialize",
    "sweep_sigma",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_occupation",
    "two_mode_squeeze_symplectic",
    "vacuum",
    "witness_table",
]
