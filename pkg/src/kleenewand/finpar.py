"""Finite sets and partial functions between them.

This is the concrete model every other module computes in. Elements of a
finite object are the indices ``0..size-1``; optional labels are carried for
presentation only. A :class:`PartialMap` stores its table as a tuple of
ints with ``-1`` for "undefined", which is the format the kernels work on.

Composition is written diagrammatically: ``compose(f, g)`` (also ``f >> g``)
first applies ``f`` and then ``g``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from . import kernels
from .errors import PreconditionError, ShapeError

UNDEF = kernels.UNDEF


class FinObj:
    """A finite carrier of ``size`` elements with optional labels.

    Two objects are equal when their sizes agree and, if both carry labels,
    their label sequences agree. An unlabeled object therefore matches any
    labeled object of the same size.
    """

    __slots__ = ("size", "labels")

    def __init__(self, size: int, labels: Sequence[str] | None = None):
        if size < 0:
            raise ValueError("object size must be nonnegative, got %d" % size)
        if labels is not None:
            labels = tuple(str(lab) for lab in labels)
            if len(labels) != size:
                raise ValueError("expected %d labels, got %d" % (size, len(labels)))
            if len(set(labels)) != size:
                raise ValueError("labels must be pairwise distinct: %r" % (labels,))
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FinObj is immutable")

    @classmethod
    def labelled(cls, labels: Sequence[str]) -> FinObj:
        return cls(len(labels), labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinObj):
            return NotImplemented
        if self.size != other.size:
            return False
        if self.labels is not None and other.labels is not None:
            return self.labels == other.labels
        return True

    def __hash__(self) -> int:
        return hash(self.size)

    def __reduce__(self):
        return (FinObj, (self.size, self.labels))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label: str) -> int:
        if self.labels is None:
            raise KeyError("object %s carries no labels" % self)
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError("no element %r in %s" % (label, self)) from None

    def __repr__(self) -> str:
        if self.labels is None:
            return "FinObj(%d)" % self.size
        return "FinObj{%s}" % " ".join(self.labels)

    __str__ = __repr__


def obj(n: int) -> FinObj:
    """Shorthand for an unlabeled object of size ``n``."""
    return FinObj(n)


class PartialMap:
    """An extensional partial function ``dom -> cod``.

    ``table[x]`` is ``None`` where the map is undefined and a codomain index
    otherwise. Instances are immutable and hashable.
    """

    __slots__ = ("dom", "cod", "t", "_hash")

    def __init__(self, dom: FinObj | int, cod: FinObj | int,
                 table: Iterable[int | None]):
        dom = dom if isinstance(dom, FinObj) else FinObj(dom)
        cod = cod if isinstance(cod, FinObj) else FinObj(cod)
        t = tuple(UNDEF if v is None else int(v) for v in table)
        if len(t) != dom.size:
            raise ShapeError("table has %d entries but the domain %s has %d elements"
                             % (len(t), dom, dom.size), dom, cod)
        for x, v in enumerate(t):
            if v < UNDEF or v >= cod.size:
                raise ValueError("entry %d -> %d lies outside the codomain %s" % (x, v, cod))
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, dom: FinObj, cod: FinObj, t: tuple) -> PartialMap:
        # trusted constructor used on kernel output
        self = object.__new__(cls)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def from_pairs(cls, dom: FinObj | int, cod: FinObj | int,
                   pairs: Mapping[int, int]) -> PartialMap:
        dom = dom if isinstance(dom, FinObj) else FinObj(dom)
        return cls(dom, cod, [pairs.get(x) for x in range(dom.size)])

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("PartialMap is immutable")

    def __reduce__(self):
        return (PartialMap._raw, (self.dom, self.cod, self.t))

    @property
    def table(self) -> tuple[int | None, ...]:
        return tuple(None if v < 0 else v for v in self.t)

    def __call__(self, x: int) -> int | None:
        v = self.t[x]
        return None if v < 0 else v

    def support(self) -> frozenset[int]:
        """The points at which the map is defined."""
        return frozenset(x for x, v in enumerate(self.t) if v >= 0)

    def mask(self) -> int:
        """The support as a bitmask over domain indices."""
        m = 0
        for x, v in enumerate(self.t):
            if v >= 0:
                m |= 1 << x
        return m

    def pairs(self) -> dict[int, int]:
        return {x: v for x, v in enumerate(self.t) if v >= 0}

    def is_zero(self) -> bool:
        return all(v < 0 for v in self.t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialMap):
            return NotImplemented
        return self.t == other.t and self.dom == other.dom and self.cod == other.cod

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dom.size, self.cod.size, self.t))
            object.__setattr__(self, "_hash", h)
        return h

    def __rshift__(self, other: PartialMap) -> PartialMap:
        return compose(self, other)

    def __repr__(self) -> str:
        body = ", ".join("%s↦%s" % (self.dom.label(x), self.cod.label(v))
                         for x, v in enumerate(self.t) if v >= 0)
        return "PartialMap(%s→%s, {%s})" % (self.dom, self.cod, body)


def _require_parallel(f: PartialMap, g: PartialMap, what: str) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeError("%s needs parallel maps, got %s→%s and %s→%s"
                         % (what, f.dom, f.cod, g.dom, g.cod), f, g)


def compose(f: PartialMap, g: PartialMap) -> PartialMap:
    """The composite ``fg``: apply ``f``, then ``g``."""
    if f.cod != g.dom:
        raise ShapeError("cannot compose: codomain %s of the first map does not match "
                         "domain %s of the second" % (f.cod, g.dom), f.cod, g.dom)
    return PartialMap._raw(f.dom, g.cod, kernels.compose(f.t, g.t))


def compose_all(first: PartialMap, *rest: PartialMap) -> PartialMap:
    out = first
    for g in rest:
        out = compose(out, g)
    return out


def restriction(f: PartialMap) -> PartialMap:
    """The restriction idempotent of ``f``: the identity on where ``f`` is defined."""
    return PartialMap._raw(f.dom, f.dom, kernels.restrict(f.t))


def leq(f: PartialMap, g: PartialMap) -> bool:
    """``f <= g`` exactly when restricting ``g`` to the support of ``f`` gives ``f``."""
    _require_parallel(f, g, "the order")
    return compose(restriction(f), g) == f


def zero(dom: FinObj | int, cod: FinObj | int) -> PartialMap:
    dom = dom if isinstance(dom, FinObj) else FinObj(dom)
    cod = cod if isinstance(cod, FinObj) else FinObj(cod)
    return PartialMap._raw(dom, cod, (UNDEF,) * dom.size)


def identity(o: FinObj | int) -> PartialMap:
    o = o if isinstance(o, FinObj) else FinObj(o)
    return PartialMap._raw(o, o, tuple(range(o.size)))


def is_total(f: PartialMap) -> bool:
    return restriction(f) == identity(f.dom)


def is_rest_idem(f: PartialMap) -> bool:
    return f.dom == f.cod and restriction(f) == f


def rest_idem(o: FinObj | int, subset: Iterable[int]) -> PartialMap:
    """The restriction idempotent on ``o`` that fixes exactly ``subset``."""
    o = o if isinstance(o, FinObj) else FinObj(o)
    keep = set(subset)
    bad = [x for x in keep if not 0 <= x < o.size]
    if bad:
        raise ValueError("points %r are outside %s" % (sorted(bad), o))
    return PartialMap._raw(o, o, tuple(x if x in keep else UNDEF for x in range(o.size)))


def rest_idem_from_mask(o: FinObj | int, mask: int) -> PartialMap:
    o = o if isinstance(o, FinObj) else FinObj(o)
    if mask >> o.size:
        raise ValueError("mask %d has bits outside %s" % (mask, o))
    return PartialMap._raw(o, o, tuple(x if mask >> x & 1 else UNDEF for x in range(o.size)))


def power(f: PartialMap, n: int) -> PartialMap:
    """``f`` composed with itself ``n`` times (the identity when ``n == 0``)."""
    if f.dom != f.cod:
        raise PreconditionError("only endomorphisms have powers, got %s→%s" % (f.dom, f.cod))
    out = identity(f.dom)
    for _ in range(n):
        out = compose(out, f)
    return out


# -- JSON interchange -------------------------------------------------------

def map_to_json(f: PartialMap) -> dict[str, Any]:
    doc: dict[str, Any] = {"dom": f.dom.size, "cod": f.cod.size, "table": list(f.table)}
    if f.dom.labels is not None:
        doc["dom_labels"] = list(f.dom.labels)
    if f.cod.labels is not None:
        doc["cod_labels"] = list(f.cod.labels)
    return doc


def map_from_json(doc: Mapping[str, Any]) -> PartialMap:
    try:
        dom = FinObj(int(doc["dom"]), doc.get("dom_labels"))
        cod = FinObj(int(doc["cod"]), doc.get("cod_labels"))
        table = doc["table"]
    except KeyError as exc:
        raise ValueError("map JSON is missing the field %s" % exc) from None
    if not isinstance(table, list):
        raise ValueError("map JSON field 'table' must be a list")
    for v in table:
        if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
            raise ValueError("table entries must be null or integers, got %r" % (v,))
    return PartialMap(dom, cod, table)
