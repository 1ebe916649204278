"""Small helpers shared by the law modules."""

from __future__ import annotations

from ..finpar import FinObj
from .gen import gen_partial_map
from .registry import Bounds


def density(rng) -> float:
    """A density drawn from a few levels, so sparse and full maps both show up."""
    return (0.3, 0.6, 0.9, 1.0)[rng.below(4)]


def rand_obj(rng, b: Bounds, lo: int = 0) -> FinObj:
    return FinObj(rng.between(lo, b.max_size))


def rand_map(rng, dom, cod):
    return gen_partial_map(rng, dom, cod, density(rng))


def fail(what: str, **vals) -> str:
    body = ", ".join("%s=%r" % kv for kv in vals.items())
    return "%s (%s)" % (what, body) if body else what
