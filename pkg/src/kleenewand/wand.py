"""The Kleene wand on finite partial maps, and the classical structure around it.

``kleene_wand(f, g)`` reads as "iterate ``f`` until ``g`` applies, then apply
``g``". It is computed as the join of the terms ``g, fg, ffg, ...``. Because
nonzero terms have pairwise disjoint, nonempty supports inside ``X``, at
most ``|X|`` of them are nonzero, so the join is reached after finitely many
rounds. Points whose ``f``-orbit never enters the support of ``g`` (dead
ends and cycles) stay undefined.

Complements, relative complements and the upper star need the maximal
relation, under which the finite model is classical.
"""

from __future__ import annotations

from collections.abc import Callable

from . import kernels
from .errors import PreconditionError, ShapeError
from .finpar import PartialMap, compose, is_rest_idem, leq, power, restriction
from .interference import MAXIMAL, MINIMAL, InterferenceRel, join, require_perp

WandFn = Callable[[PartialMap, PartialMap], PartialMap]
StarFn = Callable[[PartialMap], PartialMap]


def _check_wand_input(f: PartialMap, g: PartialMap) -> None:
    if f.dom != f.cod:
        raise ShapeError("the loop body must be an endomorphism, got %s→%s" % (f.dom, f.cod),
                         f.dom, f.cod)
    if g.dom != f.dom:
        raise ShapeError("body and guard must share a domain, got %s and %s" % (f.dom, g.dom),
                         f.dom, g.dom)


def kleene_wand(f: PartialMap, g: PartialMap, rel: InterferenceRel = MAXIMAL) -> PartialMap:
    """``f ⩚ g``, the join over n of ``fⁿg``.

    >>> from kleenewand.finpar import PartialMap
    >>> f = PartialMap(3, 3, [1, 2, None])
    >>> g = PartialMap(3, 1, [None, None, 0])
    >>> kleene_wand(f, g).table
    (0, 0, 0)
    """
    _check_wand_input(f, g)
    require_perp(rel, f, g, "wand precondition")
    return PartialMap._raw(f.dom, g.cod, kernels.wand(f.t, g.t))


def wand_terms(f: PartialMap, g: PartialMap) -> list[PartialMap]:
    """The nonzero terms ``g, fg, f²g, ...`` in order (the join's summands)."""
    _check_wand_input(f, g)
    terms = []
    term = g
    for _ in range(f.dom.size + 1):
        if term.is_zero():
            return terms
        terms.append(term)
        term = compose(f, term)
    raise AssertionError("wand terms did not reach zero within |X| + 1 rounds")


def wand_delta(f: PartialMap, g: PartialMap) -> PartialMap:
    """The wand for the minimal relation, which is always ``g``."""
    _check_wand_input(f, g)
    require_perp(MINIMAL, f, g, "wand precondition")
    return g


# -- classical structure -------------------------------------------------------

def complement(e: PartialMap) -> PartialMap:
    """The restriction idempotent on the complementary subset."""
    if not is_rest_idem(e):
        raise PreconditionError("complement needs a restriction idempotent, got %r" % (e,))
    return PartialMap._raw(e.dom, e.dom,
                           tuple(x if v < 0 else kernels.UNDEF for x, v in enumerate(e.t)))


def relative_complement(f: PartialMap, g: PartialMap) -> PartialMap:
    """``g \\ f``, the part of ``g`` outside the support of ``f``; needs ``f ≤ g``."""
    if not leq(f, g):
        raise PreconditionError("relative complement needs f ≤ g")
    return compose(complement(restriction(f)), g)


def upper_star(f: PartialMap) -> PartialMap:
    """``f⋆ = f ⩚ f̄ᶜ``: run ``f`` until it gets stuck and return where it stopped."""
    if f.dom != f.cod:
        raise ShapeError("the star needs an endomorphism, got %s→%s" % (f.dom, f.cod),
                         f.dom, f.cod)
    return kleene_wand(f, complement(restriction(f)))


def star_to_wand(star: StarFn, f: PartialMap, g: PartialMap,
                 rel: InterferenceRel = MAXIMAL) -> PartialMap:
    """The wand induced by a star operator: ``f⋆g``."""
    _check_wand_input(f, g)
    require_perp(rel, f, g, "wand precondition")
    return compose(star(f), g)


def wand_to_star(wand: WandFn, f: PartialMap) -> PartialMap:
    """The star induced by a wand operator: ``f ⩚ f̄ᶜ``."""
    if f.dom != f.cod:
        raise ShapeError("the star needs an endomorphism", f.dom, f.cod)
    return wand(f, complement(restriction(f)))


def unrolled(f: PartialMap, g: PartialMap, n: int, wand: WandFn = kleene_wand) -> PartialMap:
    """``g ⊔ fg ⊔ … ⊔ fⁿg ⊔ fⁿ⁺¹(f ⩚ g)``, which must equal ``f ⩚ g``."""
    fam = [compose(power(f, k), g) for k in range(n + 1)]
    fam.append(compose(power(f, n + 1), wand(f, g)))
    return join(MAXIMAL, fam)


__all__ = [
    "WandFn", "StarFn", "kleene_wand", "wand_terms", "wand_delta", "complement",
    "relative_complement", "upper_star", "star_to_wand", "wand_to_star", "unrolled",
]
