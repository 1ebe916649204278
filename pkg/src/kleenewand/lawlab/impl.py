"""The implementation under test, with named mutations.

An :class:`Impl` bundles the wand the laws are checked against, together
with everything derived from it (matrix wand, star, iteration and trace
operators). Mutations replace the wand with a deliberately wrong one; the
law suite must then fail, which shows the laws can catch a broken wand.
Impls are referred to by name, so they can cross process boundaries.
"""

from __future__ import annotations

from collections.abc import Callable

from ..finpar import PartialMap, compose
from ..interference import MAXIMAL, join, require_perp
from ..trace import MatWand, lift_wand
from ..wand import _check_wand_input, kleene_wand, wand_to_star


def guard_only(f: PartialMap, g: PartialMap) -> PartialMap:
    """Mutation: ``f ⩚ g := g`` (never iterates)."""
    _check_wand_input(f, g)
    require_perp(MAXIMAL, f, g, "wand precondition")
    return g


def one_step(f: PartialMap, g: PartialMap) -> PartialMap:
    """Mutation: ``f ⩚ g := g ⊔ fg`` (iterates at most once)."""
    _check_wand_input(f, g)
    return join(MAXIMAL, [g, compose(f, g)])


MUTATIONS: dict[str, Callable[[PartialMap, PartialMap], PartialMap]] = {
    "canonical": kleene_wand,
    "guard-only": guard_only,
    "one-step": one_step,
}


class Impl:
    """A wand plus the operators derived from it."""

    __slots__ = ("name", "wand", "mat_wand")

    def __init__(self, name: str = "canonical"):
        if name not in MUTATIONS:
            raise KeyError("unknown implementation %r; known: %s" % (name, sorted(MUTATIONS)))
        self.name = name
        self.wand = MUTATIONS[name]
        self.mat_wand: MatWand = lift_wand(self.wand)

    def star(self, f: PartialMap) -> PartialMap:
        return wand_to_star(self.wand, f)

    def __reduce__(self):
        return (Impl, (self.name,))

    def __repr__(self) -> str:
        return "Impl(%r)" % self.name


__all__ = ["Impl", "MUTATIONS", "guard_only", "one_step"]
