"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Any


class KleeneWandError(Exception):
    """Base class for all library errors."""


class ShapeError(KleeneWandError, ValueError):
    """Two values whose objects do not line up were combined."""

    def __init__(self, message: str, left: Any = None, right: Any = None):
        super().__init__(message)
        self.left = left
        self.right = right


class DisjointnessError(KleeneWandError, ValueError):
    """A family that must be pairwise disjoint is not.

    ``pair`` holds the indices of the offending members (when the failure
    concerns a family) and ``point`` the first element at which both are
    defined (when the relation is the maximal one and such a point exists).
    """

    def __init__(self, message: str, pair: tuple[int, int] | None = None,
                 point: int | None = None):
        super().__init__(message)
        self.pair = pair
        self.point = point


class PreconditionError(KleeneWandError, ValueError):
    """An operation was called outside its documented precondition."""


class CapacityError(KleeneWandError, ValueError):
    """An exhaustive procedure was asked to exceed its size cap."""


class ValidationError(KleeneWandError, ValueError):
    """A custom relation was used before passing validation."""
