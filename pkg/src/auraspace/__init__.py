"""Finite-model workbench for ideal-aura topological spaces."""

from .core import (
    FiniteTopology,
    Ideal,
    IdealAuraSpace,
    ParseError,
    ScopeFunction,
    SetFamily,
    SpaceError,
    Universe,
    UnknownPoint,
    Violation,
    classical_closure,
    classical_interior,
    ideal_from_generators,
    neighborhoods,
    validate_ideal,
    validate_topology,
)
from .operators import (
    ClosureTrace,
    aura_closure,
    aura_interior,
    aura_local,
    ia_closure,
    ia_closure_trace,
    ia_interior,
    local_star,
    psi_aura,
    star_closure,
    tables,
)

__version__ = "0.1.0"

__all__ = [
    "ClosureTrace",
    "FiniteTopology",
    "Ideal",
    "IdealAuraSpace",
    "ParseError",
    "ScopeFunction",
    "SetFamily",
    "SpaceError",
    "Universe",
    "UnknownPoint",
    "Violation",
    "aura_closure",
    "aura_interior",
    "aura_local",
    "classical_closure",
    "classical_interior",
    "ia_closure",
    "ia_closure_trace",
    "ia_interior",
    "ideal_from_generators",
    "local_star",
    "neighborhoods",
    "psi_aura",
    "star_closure",
    "tables",
    "validate_ideal",
    "validate_topology",
]
