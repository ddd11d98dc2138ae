"""Spread-spectrum data hiding as a topological dynamical system.

The package models watermark embedding as iteration of a map on a
phase space of (strategy sequence, media vector) pairs, provides the
classical spread-spectrum modulations as strategy builders, ships
constructive witnesses for the chaotic properties of the map, and
encodes Turing machine runs as orbits of a step function.
"""

from .phase_space import (
    BoundViolation,
    DimensionMismatch,
    PhasePoint,
    SpaceConfig,
    Strategy,
    apply_g,
    as_vector,
    basis_vector,
    check_strategy_bounds,
    d_inf,
    d_phase,
    d_strategy,
    d_strategy_truncated,
    initial,
    iterate_g,
    shift,
    zeros_vector,
)
from .modulation import (
    SCHEMES,
    CarrierError,
    CarrierSet,
    DecodeResult,
    SchemeConfig,
    ZeroProjectionError,
    as_message,
    decode,
    embed,
    generate_carriers,
    iss_strategy,
    nw_strategy,
    ss_strategy,
    ss_watermark,
    watermark_strategy,
)
from .chaos_analysis import (
    DEFAULT_TOLERANCE,
    OrbitTrace,
    WitnessProperty,
    WitnessReport,
    ball_index,
    continuity_probe,
    continuity_report,
    divergence_trace,
    empirical_sensitivity_scan,
    expansivity_counterexample,
    phase_point_from_dict,
    phase_point_to_dict,
    random_phase_point,
    strategy_from_dict,
    strategy_to_dict,
    witness_regularity,
    witness_sensitivity,
    witness_strong_transitivity,
)
from .tm_encoding import (
    AlreadyHalted,
    MachineParseError,
    TmConfiguration,
    TmRunResult,
    TuringMachine,
    UndefinedTransition,
    initial_configuration,
    load_machine,
    parse_machine,
    tape_window,
    tm_run,
    tm_step,
)

__version__ = "0.1.0"

__all__ = [
    "AlreadyHalted",
    "BoundViolation",
    "CarrierError",
    "CarrierSet",
    "DEFAULT_TOLERANCE",
    "DecodeResult",
    "DimensionMismatch",
    "MachineParseError",
    "OrbitTrace",
    "PhasePoint",
    "SCHEMES",
    "SchemeConfig",
    "SpaceConfig",
    "Strategy",
    "TmConfiguration",
    "TmRunResult",
    "TuringMachine",
    "UndefinedTransition",
    "WitnessProperty",
    "WitnessReport",
    "ZeroProjectionError",
    "apply_g",
    "as_message",
    "as_vector",
    "ball_index",
    "basis_vector",
    "check_strategy_bounds",
    "continuity_probe",
    "continuity_report",
    "d_inf",
    "d_phase",
    "d_strategy",
    "d_strategy_truncated",
    "decode",
    "divergence_trace",
    "embed",
    "empirical_sensitivity_scan",
    "expansivity_counterexample",
    "generate_carriers",
    "initial",
    "initial_configuration",
    "iss_strategy",
    "iterate_g",
    "load_machine",
    "nw_strategy",
    "parse_machine",
    "phase_point_from_dict",
    "phase_point_to_dict",
    "random_phase_point",
    "shift",
    "ss_strategy",
    "ss_watermark",
    "strategy_from_dict",
    "strategy_to_dict",
    "tape_window",
    "tm_run",
    "tm_step",
    "watermark_strategy",
    "witness_regularity",
    "witness_sensitivity",
    "witness_strong_transitivity",
    "zeros_vector",
]
