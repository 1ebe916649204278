"""The law registry: named, runnable checks with seeded case generators.

A :class:`Law` has a generator ``gen(rng, bounds) -> case`` producing a dict
of named inputs, a checker ``check(case, impl) -> None | str`` returning a
failure description, and optionally an exhaustive enumerator. Cases are
plain values that :func:`encode_case` turns into JSON, so a failing case can
be replayed without the generator.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field, replace
from typing import Any

from ..djcomp import DjMap, dj_from_json, dj_to_json
from ..finpar import PartialMap, map_from_json, map_to_json
from ..interference import MAXIMAL, MINIMAL, InterferenceRel, relation_from_json, relation_to_json
from ..matext import MatObj, Matrix, matrix_from_json, matrix_to_json
from .impl import Impl
from .rng import SplitMix64

Case = dict[str, Any]


@dataclass(frozen=True)
class Bounds:
    """Size limits for generated cases."""

    max_size: int = 6
    max_parts: int = 3
    max_gens: int = 3

    def with_max_size(self, k: int | None) -> Bounds:
        return self if k is None else replace(self, max_size=k)


@dataclass(frozen=True)
class Law:
    id: str
    area: str
    statement: str
    gen: Callable[[SplitMix64, Bounds], Case]
    check: Callable[[Case, Impl], str | None]
    bounds: Bounds = field(default_factory=Bounds)
    exhaustive: Callable[[Bounds], Iterable[Case]] | None = None
    exhaustive_bounds: Bounds | None = None


REGISTRY: dict[str, Law] = {}


def law(id: str, area: str, statement: str, bounds: Bounds | None = None,
        exhaustive: Callable[[Bounds], Iterable[Case]] | None = None,
        exhaustive_bounds: Bounds | None = None):
    """Decorator registering ``(gen, check)`` returned by the decorated factory."""

    def deco(factory: Callable[[], tuple[Callable, Callable]]):
        gen, check = factory()
        if id in REGISTRY:
            raise ValueError("law %r registered twice" % id)
        REGISTRY[id] = Law(id, area, statement, gen, check, bounds or Bounds(), exhaustive,
                           exhaustive_bounds)
        return factory

    return deco


def add_law(lw: Law) -> None:
    if lw.id in REGISTRY:
        raise ValueError("law %r registered twice" % lw.id)
    REGISTRY[lw.id] = lw


ALIASES: dict[str, str] = {}


def resolve(law_id: str) -> Law:
    """Look up a law by id, alias, or unique suffix after a dot (``Yanking``)."""
    _ensure_loaded()
    if law_id in REGISTRY:
        return REGISTRY[law_id]
    if law_id in ALIASES:
        return REGISTRY[ALIASES[law_id]]
    hits = [k for k in REGISTRY if k.split(".", 1)[-1] == law_id]
    if len(hits) == 1:
        return REGISTRY[hits[0]]
    if len(hits) > 1:
        raise KeyError("law id %r is ambiguous: %s" % (law_id, ", ".join(sorted(hits))))
    raise KeyError("unknown law %r" % law_id)


def all_laws(area: str | None = None) -> list[Law]:
    _ensure_loaded()
    return [lw for lw in REGISTRY.values() if area is None or lw.area == area]


def _ensure_loaded() -> None:
    from . import laws_base, laws_dj, laws_mat, laws_trace, laws_wand  # noqa: F401


# -- case encoding ---------------------------------------------------------------

def encode_value(v: Any) -> Any:
    if isinstance(v, PartialMap):
        return {"map": map_to_json(v)}
    if isinstance(v, Matrix):
        return {"matrix": matrix_to_json(v)}
    if isinstance(v, DjMap):
        return {"dj": dj_to_json(v)}
    if isinstance(v, MatObj):
        return {"obj": v.sizes()}
    if isinstance(v, InterferenceRel):
        if v.kind == "custom":
            return {"rel": "custom", "pairs": relation_to_json(v)}
        return {"rel": v.kind}
    if isinstance(v, (list, tuple)):
        return {"list": [encode_value(x) for x in v]}
    if v is None or isinstance(v, (bool, int, str, float)):
        return v
    raise TypeError("cannot encode case value of type %s" % type(v).__name__)


def decode_value(v: Any) -> Any:
    if isinstance(v, dict):
        if "map" in v:
            return map_from_json(v["map"])
        if "matrix" in v:
            return matrix_from_json(v["matrix"])
        if "dj" in v:
            return dj_from_json(v["dj"])
        if "obj" in v:
            return MatObj(v["obj"])
        if "rel" in v:
            if v["rel"] == "maximal":
                return MAXIMAL
            if v["rel"] == "minimal":
                return MINIMAL
            rel = relation_from_json(v["pairs"])
            return rel.assume_valid()
        if "list" in v:
            return [decode_value(x) for x in v["list"]]
        raise ValueError("unrecognised case value %r" % (v,))
    return v


def encode_case(case: Case) -> dict[str, Any]:
    return {k: encode_value(v) for k, v in case.items()}


def decode_case(doc: dict[str, Any]) -> Case:
    return {k: decode_value(v) for k, v in doc.items()}


__all__ = ["Bounds", "Law", "REGISTRY", "ALIASES", "law", "add_law", "resolve", "all_laws",
           "encode_case", "decode_case", "Case"]
