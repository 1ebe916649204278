"""Kleene wands, disjoint joins and traces over finite partial maps.

The submodules are importable on their own; the most common entry points
are re-exported here.
"""

from .errors import (
    CapacityError,
    DisjointnessError,
    KleeneWandError,
    PreconditionError,
    ShapeError,
    ValidationError,
)
from .finpar import FinObj, PartialMap, compose, identity, is_total, leq, obj, restriction, zero
from .interference import MAXIMAL, MINIMAL, InterferenceRel, join, perp, validate_interference
from .kernels import BACKEND
from .wand import complement, kleene_wand, relative_complement, upper_star

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CapacityError", "DisjointnessError", "FinObj", "InterferenceRel",
    "KleeneWandError", "MAXIMAL", "MINIMAL", "PartialMap", "PreconditionError", "ShapeError",
    "ValidationError", "complement", "compose", "identity", "is_total", "join", "kleene_wand",
    "leq", "obj", "perp", "relative_complement", "restriction", "upper_star",
    "validate_interference", "zero",
]
