"""Exhaustive enumeration of small maps and wand inputs."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from math import comb

from ..errors import CapacityError
from ..finpar import FinObj, PartialMap

ENUM_MAX_X = 3
ENUM_MAX_A = 2
UNDEF = -1


def all_maps(dom: FinObj | int, cod: FinObj | int) -> Iterator[PartialMap]:
    """Every partial map ``dom → cod``: ``(|cod| + 1)^|dom|`` of them."""
    dom = dom if isinstance(dom, FinObj) else FinObj(dom)
    cod = cod if isinstance(cod, FinObj) else FinObj(cod)
    values = range(-1, cod.size)
    for t in itertools.product(values, repeat=dom.size):
        yield PartialMap._raw(dom, cod, t)


def enumerate_all(x_size: int, a_size: int) -> Iterator[tuple[PartialMap, PartialMap]]:
    """Every wand input ``(f: X → X, g: X → A)`` with disjoint supports, once each.

    Each point independently is undefined in both, defined in ``f`` only or
    defined in ``g`` only, which gives ``(1 + |X| + |A|)^|X|`` pairs.
    """
    if x_size > ENUM_MAX_X or a_size > ENUM_MAX_A or x_size < 0 or a_size < 0:
        raise CapacityError("enumeration is capped at |X| ≤ %d and |A| ≤ %d, asked for %d, %d"
                            % (ENUM_MAX_X, ENUM_MAX_A, x_size, a_size))
    x, a = FinObj(x_size), FinObj(a_size)
    choices = [(UNDEF, UNDEF)] + [(y, UNDEF) for y in range(x_size)] + \
              [(UNDEF, b) for b in range(a_size)]
    for pick in itertools.product(choices, repeat=x_size):
        yield (PartialMap._raw(x, x, tuple(p[0] for p in pick)),
               PartialMap._raw(x, a, tuple(p[1] for p in pick)))


def count_disjoint_pairs(x_size: int, a_size: int) -> int:
    """Number of disjoint pairs, summed over the sizes of the two supports."""
    total = 0
    for k in range(x_size + 1):
        for j in range(x_size - k + 1):
            total += comb(x_size, k) * comb(x_size - k, j) * x_size ** k * a_size ** j
    return total


__all__ = ["ENUM_MAX_X", "ENUM_MAX_A", "all_maps", "enumerate_all", "count_disjoint_pairs"]
