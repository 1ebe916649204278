"""The disjoint-join completion over the finite model.

A map of the completion is a down-closed set of maps, represented by a
finite generator set: nonzero, parallel and pairwise disjoint. For such
sets the down-set determines the generators, so equality of
:class:`DjMap` values is plain set equality.

The ambient relation defaults to ``MAXIMAL`` and can be passed to every
operation that needs it.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from typing import Any

from .errors import DisjointnessError, ShapeError
from .finpar import (
    FinObj,
    PartialMap,
    compose,
    identity,
    leq,
    map_from_json,
    map_to_json,
    rest_idem_from_mask,
    restriction,
    zero,
)
from .interference import MAXIMAL, InterferenceRel, perp


class DjMap:
    """A generator set ``gens`` of maps ``dom → cod``."""

    __slots__ = ("dom", "cod", "gens")

    def __init__(self, dom: FinObj, cod: FinObj, gens: Iterable[PartialMap],
                 rel: InterferenceRel = MAXIMAL):
        gens = frozenset(gens)
        for f in gens:
            if f.dom != dom or f.cod != cod:
                raise ShapeError("generator %r is not a map %s→%s" % (f, dom, cod), f, (dom, cod))
            if f.is_zero():
                raise ValueError("generators must be nonzero")
        ordered = sorted(gens, key=lambda m: m.t)
        for f, g in itertools.combinations(ordered, 2):
            if not perp(rel, f, g):
                raise DisjointnessError("generators %r and %r are not disjoint" % (f, g))
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "gens", gens)

    @classmethod
    def _raw(cls, dom: FinObj, cod: FinObj, gens: frozenset) -> DjMap:
        self = object.__new__(cls)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "gens", gens)
        return self

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("DjMap is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DjMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.dom.size, self.cod.size, self.gens))

    def sorted_gens(self) -> list[PartialMap]:
        return sorted(self.gens, key=lambda m: m.t)

    def __repr__(self) -> str:
        return "DjMap(%s→%s, %s)" % (self.dom, self.cod, self.sorted_gens())


def dj_compose(s: DjMap, t: DjMap) -> DjMap:
    """Pairwise composites of generators, zeros dropped."""
    if s.cod != t.dom:
        raise ShapeError("cannot compose: codomain %s does not match domain %s"
                         % (s.cod, t.dom), s.cod, t.dom)
    gens = set()
    for f in s.gens:
        for g in t.gens:
            h = compose(f, g)
            if not h.is_zero():
                gens.add(h)
    return DjMap._raw(s.dom, t.cod, frozenset(gens))


def dj_restriction(s: DjMap) -> DjMap:
    return DjMap._raw(s.dom, s.dom, frozenset(restriction(f) for f in s.gens))


def dj_leq(s: DjMap, t: DjMap) -> bool:
    """Down-set containment: each generator of ``s`` lies below one of ``t``."""
    if s.dom != t.dom or s.cod != t.cod:
        raise ShapeError("the order compares parallel maps", s, t)
    return all(any(leq(f, g) for g in t.gens) for f in s.gens)


def dj_perp(s: DjMap, t: DjMap, rel: InterferenceRel = MAXIMAL) -> bool:
    if s.dom != t.dom:
        raise ShapeError("disjointness compares maps out of one object", s.dom, t.dom)
    return all(perp(rel, f, g) for f in s.gens for g in t.gens)


def dj_join(family: Sequence[DjMap], dom: FinObj | None = None, cod: FinObj | None = None,
            rel: InterferenceRel = MAXIMAL) -> DjMap:
    """Union of the generator sets of a pairwise disjoint family."""
    family = list(family)
    if not family:
        if dom is None or cod is None:
            raise ValueError("the join of an empty family needs dom and cod")
        return DjMap._raw(dom, cod, frozenset())
    first = family[0]
    for s in family[1:]:
        if s.dom != first.dom or s.cod != first.cod:
            raise ShapeError("join needs parallel maps", first, s)
    for i, j in itertools.combinations(range(len(family)), 2):
        if not dj_perp(family[i], family[j], rel):
            raise DisjointnessError("join: members %d and %d are not disjoint" % (i, j),
                                    pair=(i, j))
    gens: frozenset = frozenset().union(*(s.gens for s in family))
    return DjMap._raw(first.dom, first.cod, gens)


def dj_identity(o: FinObj) -> DjMap:
    one = identity(o)
    return DjMap._raw(o, o, frozenset() if one.is_zero() else frozenset([one]))


def dj_zero(dom: FinObj, cod: FinObj) -> DjMap:
    return DjMap._raw(dom, cod, frozenset())


def dj_embed(f: PartialMap) -> DjMap:
    return DjMap._raw(f.dom, f.cod, frozenset() if f.is_zero() else frozenset([f]))


def down_set(s: DjMap) -> frozenset[PartialMap]:
    """Every map below some generator, listed explicitly (exponential; for checks)."""
    out = set()
    for f in s.gens:
        m = f.mask()
        sub = m
        while True:
            out.add(compose(rest_idem_from_mask(s.dom, sub), f))
            if sub == 0:
                break
            sub = (sub - 1) & m
    if not s.gens:
        out.add(zero(s.dom, s.cod))
    return frozenset(out)


def dj_to_json(s: DjMap) -> dict[str, Any]:
    return {"dom": s.dom.size, "cod": s.cod.size,
            "gens": [map_to_json(f) for f in s.sorted_gens()]}


def dj_from_json(doc: dict[str, Any], rel: InterferenceRel = MAXIMAL) -> DjMap:
    dom, cod = FinObj(int(doc["dom"])), FinObj(int(doc["cod"]))
    return DjMap(dom, cod, [map_from_json(g) for g in doc["gens"]], rel)
