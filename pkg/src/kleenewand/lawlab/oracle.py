"""Operational oracles: small interpreters that never touch the join formulas.

Each oracle follows a token around a finite graph with a visited set, so it
terminates after at most one visit per point and reports revisits (cycles)
as undefined.
"""

from __future__ import annotations

from ..errors import DisjointnessError, ShapeError
from ..finpar import PartialMap


def step_simulate(f: PartialMap, g: PartialMap, x: int) -> int | None:
    """Run ``until ḡ do f end; g`` from ``x``.

    At the current point ``y``: if ``g(y)`` is defined, return it; otherwise,
    if ``f(y)`` is defined and ``y`` has not been visited, mark ``y`` and move
    to ``f(y)``; otherwise the result is undefined.
    """
    if f.dom != f.cod or g.dom != f.dom:
        raise ShapeError("step_simulate needs f: X → X and g: X → A", f, g)
    ft, gt = f.table, g.table
    for p in range(len(ft)):
        if ft[p] is not None and gt[p] is not None:
            raise DisjointnessError("body and guard are both defined at %s" % f.dom.label(p),
                                    point=p)
    visited = set()
    y = x
    while True:
        out = gt[y]
        if out is not None:
            return out
        nxt = ft[y]
        if nxt is None or y in visited:
            return None
        visited.add(y)
        y = nxt


def wand_simulate(f: PartialMap, g: PartialMap) -> PartialMap:
    """The whole map ``x ↦ step_simulate(f, g, x)``."""
    return PartialMap(f.dom, g.cod, [step_simulate(f, g, x) for x in range(f.dom.size)])


def star_simulate(f: PartialMap, x: int) -> int | None:
    """Run ``f`` from ``x`` until it is stuck; return the stuck point (undefined on a cycle)."""
    ft = f.table
    visited = set()
    y = x
    while True:
        nxt = ft[y]
        if nxt is None:
            return y
        if y in visited:
            return None
        visited.add(y)
        y = nxt


def token_trace(g: PartialMap, x_size: int, a: int) -> int | None:
    """Feedback on a flat map ``G: X + A → X + B`` (``X`` is the first ``x_size`` points).

    The token enters at ``A``-point ``a`` and follows ``G``; landing in ``X``
    feeds back, landing in ``B`` exits with the offset ``B``-index.
    """
    gt = g.table
    visited = set()
    y = gt[x_size + a]
    while True:
        if y is None:
            return None
        if y >= x_size:
            return y - x_size
        if y in visited:
            return None
        visited.add(y)
        y = gt[y]


__all__ = ["step_simulate", "wand_simulate", "star_simulate", "token_trace"]
