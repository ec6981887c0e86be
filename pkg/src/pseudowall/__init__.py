"""Exact computations with pseudo-walls and green paths for strict categories."""

from __future__ import annotations

from .catalog import Catalog, TorsionSpec
from .chambers import ChamberComplex, ChamberRecord, enumerate_chambers
from .errors import (
    CapacityError,
    InconsistencyError,
    PreconditionError,
    ProblemFileError,
    PseudowallError,
    UnsupportedRankError,
)
from .ffla import FieldSpec
from .greenpath import GreenPathEngine, GreenPathLinear, crossing_schedule, fho_sequence, validate_green
from .problem import Model, Problem, fixture_model, load_fixture, load_problem, parse_problem
from .quiver import Representation, ValuedQuiver
from .stability import ClassesAt, Stability, reduced_K0
from .strictcat import StrictCategory

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "Catalog", "ChamberComplex", "ChamberRecord", "ClassesAt", "FieldSpec",
    "GreenPathEngine", "GreenPathLinear", "InconsistencyError", "Model", "PreconditionError",
    "Problem", "ProblemFileError", "PseudowallError", "Representation", "Stability",
    "StrictCategory", "TorsionSpec", "UnsupportedRankError", "ValuedQuiver", "crossing_schedule",
    "enumerate_chambers", "fho_sequence", "fixture_model", "load_fixture", "load_problem",
    "parse_problem", "reduced_K0", "validate_green",
]
