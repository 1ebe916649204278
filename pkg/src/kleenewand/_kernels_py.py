"""Pure-Python table kernels.

Every table is a tuple of ints where ``-1`` marks an undefined entry. The
compiled module ``_kernels`` exposes the same four functions with the same
contracts; ``kleenewand.kernels`` picks one of the two at import time.
"""

from __future__ import annotations

UNDEF = -1


def compose(f: tuple, g: tuple) -> tuple:
    # diagrammatic: first f, then g
    return tuple(UNDEF if y < 0 else g[y] for y in f)


def restrict(f: tuple) -> tuple:
    return tuple(x if y >= 0 else UNDEF for x, y in enumerate(f))


def union(f: tuple, g: tuple) -> tuple[tuple, int]:
    """Pointwise union of two tables over the same domain.

    Returns ``(table, clash)`` where ``clash`` is the first index at which
    both tables are defined, or ``-1`` when the domains are disjoint. On a
    clash the returned table is meaningless.
    """
    out = []
    for x, (a, b) in enumerate(zip(f, g)):
        if a >= 0:
            if b >= 0:
                return (), x
            out.append(a)
        else:
            out.append(b)
    return tuple(out), UNDEF


def wand(f: tuple, g: tuple) -> tuple:
    """Join of the terms g, fg, ffg, ... until a term is nowhere defined.

    ``f`` is an endo-table on n points and ``g`` a table on the same n
    points whose defined entries must avoid the defined entries of ``f``.
    Nonzero terms have pairwise disjoint nonempty supports, so at most n of
    them are nonzero; the loop is capped at n + 1 rounds.
    """
    n = len(f)
    result = list(g)
    term = g
    for _ in range(n + 1):
        term = tuple(UNDEF if y < 0 else term[y] for y in f)
        live = False
        for x, v in enumerate(term):
            if v >= 0:
                live = True
                if result[x] >= 0:
                    raise AssertionError("wand terms overlap at point %d" % x)
                result[x] = v
        if not live:
            return tuple(result)
    raise AssertionError("wand iteration did not stabilise within %d rounds" % (n + 1))
