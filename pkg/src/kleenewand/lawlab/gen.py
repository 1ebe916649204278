"""Seeded generators for maps, disjoint families, matrices and generator sets.

Disjointness is always built in by sampling a partition of the domain
first (each point picks which member, if any, is defined there), never by
rejection. Every generator takes a seed or a :class:`SplitMix64` and draws
from it in a fixed order, documented per function, so the outputs are
reproducible.
"""

from __future__ import annotations

from collections.abc import Sequence

from ..djcomp import DjMap
from ..finpar import FinObj, PartialMap, rest_idem_from_mask
from ..matext import MatObj, Matrix, unflatten
from .rng import SplitMix64, as_rng

UNDEF = -1


def _obj(o: FinObj | int) -> FinObj:
    return o if isinstance(o, FinObj) else FinObj(o)


def gen_partial_map(rng: int | SplitMix64, dom: FinObj | int, cod: FinObj | int,
                    density: float = 0.7) -> PartialMap:
    """For each point in order: ``chance(density)``, then ``below(|cod|)`` if defined."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1], got %r" % density)
    rng = as_rng(rng)
    dom, cod = _obj(dom), _obj(cod)
    t = []
    for _ in range(dom.size):
        if cod.size and rng.chance(density):
            t.append(rng.below(cod.size))
        else:
            t.append(UNDEF)
    return PartialMap._raw(dom, cod, tuple(t))


def gen_total_map(rng: SplitMix64, dom: FinObj | int, cod: FinObj | int) -> PartialMap:
    dom, cod = _obj(dom), _obj(cod)
    if dom.size and not cod.size:
        raise ValueError("no total map into an empty object")
    return PartialMap._raw(dom, cod, tuple(rng.below(cod.size) for _ in range(dom.size)))


def gen_rest_idem(rng: SplitMix64, o: FinObj | int, density: float = 0.5) -> PartialMap:
    o = _obj(o)
    mask = 0
    for x in range(o.size):
        if rng.chance(density):
            mask |= 1 << x
    return rest_idem_from_mask(o, mask)


def gen_sub_map(rng: SplitMix64, f: PartialMap, density: float = 0.6) -> PartialMap:
    """A random restriction ``e f`` of ``f`` (so the result is ``≤ f``)."""
    return PartialMap._raw(f.dom, f.cod, tuple(v if v >= 0 and rng.chance(density) else UNDEF
                                               for v in f.t))


def gen_partition(rng: SplitMix64, n: int, k: int, undefined_weight: int = 1) -> list[int]:
    """Assign each of ``n`` points to a member ``0..k-1`` or to ``-1`` (no member).

    Each point draws ``below(k + undefined_weight)``; values ``≥ k`` mean
    "no member".
    """
    out = []
    for _ in range(n):
        r = rng.below(k + undefined_weight)
        out.append(r if r < k else -1)
    return out


def gen_disjoint_family(rng: int | SplitMix64, dom: FinObj | int,
                        cods: Sequence[FinObj | int]) -> list[PartialMap]:
    """Maps ``dom → cods[i]`` with pairwise disjoint supports.

    A 3-way (in general ``k + 1``-way) partition of the domain is drawn
    first; then each point owned by member ``i`` draws its value with
    ``below(|cods[i]|)``. Points owned by a member with an empty codomain
    stay undefined.
    """
    rng = as_rng(rng)
    dom = _obj(dom)
    cods = [_obj(c) for c in cods]
    owner = gen_partition(rng, dom.size, len(cods))
    tabs = [[UNDEF] * dom.size for _ in cods]
    for x, i in enumerate(owner):
        if i >= 0 and cods[i].size:
            tabs[i][x] = rng.below(cods[i].size)
    return [PartialMap._raw(dom, c, tuple(t)) for c, t in zip(cods, tabs)]


def gen_disjoint_pair(rng: int | SplitMix64, x: FinObj | int,
                      a: FinObj | int) -> tuple[PartialMap, PartialMap]:
    """A wand input ``f: X → X``, ``g: X → A`` with disjoint supports."""
    x = _obj(x)
    f, g = gen_disjoint_family(rng, x, [x, a])
    return f, g


def gen_size(rng: SplitMix64, lo: int, hi: int) -> int:
    return rng.between(lo, hi)


def gen_matobj(rng: SplitMix64, min_parts: int, max_parts: int, max_size: int,
               min_size: int = 0) -> MatObj:
    n = rng.between(min_parts, max_parts)
    return MatObj([rng.between(min_size, max_size) for _ in range(n)])


def gen_matrix(rng: int | SplitMix64, dom: MatObj, cod: MatObj,
               density: float = 0.75) -> Matrix:
    """A row-disjoint matrix.

    For each domain part and each point in it: ``chance(density)`` decides
    whether the point is mapped; if so ``below(total(cod))`` picks a target
    in the flat codomain, which fixes both the column and the value. Rows are
    disjoint because every point picks at most one target.
    """
    rng = as_rng(rng)
    total = cod.total()
    t = []
    for _ in range(dom.total()):
        if total and rng.chance(density):
            t.append(rng.below(total))
        else:
            t.append(UNDEF)
    return unflatten(PartialMap._raw(FinObj(dom.total()), FinObj(total), tuple(t)), dom, cod)


def gen_dj(rng: SplitMix64, dom: FinObj | int, cod: FinObj | int, max_gens: int = 3) -> DjMap:
    """A generator set of at most ``max_gens`` nonzero disjoint maps (empty members dropped)."""
    dom, cod = _obj(dom), _obj(cod)
    k = rng.between(0, max_gens)
    fam = gen_disjoint_family(rng, dom, [cod] * k)
    return DjMap._raw(dom, cod, frozenset(f for f in fam if not f.is_zero()))


def gen_surjection(rng: SplitMix64, dom: FinObj | int, cod: FinObj | int,
                   total: bool = False) -> PartialMap | None:
    """A partial (or total) map hitting every point of ``cod``; ``None`` if impossible.

    The first ``|cod|`` points of a shuffled domain cover the codomain in a
    shuffled order; remaining points map randomly or (unless ``total``)
    stay undefined.
    """
    dom, cod = _obj(dom), _obj(cod)
    if cod.size > dom.size or (total and dom.size and not cod.size):
        return None
    order = rng.shuffle(list(range(dom.size)))
    targets = rng.shuffle(list(range(cod.size)))
    t = [UNDEF] * dom.size
    for x, y in zip(order, targets):
        t[x] = y
    for x in order[cod.size:]:
        if cod.size and (total or rng.chance(0.7)):
            t[x] = rng.below(cod.size)
    return PartialMap._raw(dom, cod, tuple(t))


def gen_uniform_square(rng: SplitMix64, h: PartialMap, f2: PartialMap, g2: PartialMap,
                       flavor: str = "uniform") -> tuple[PartialMap, PartialMap]:
    """Given ``h: X → X'`` hitting all of ``X'`` and ``f′ ⊥ g′`` on ``X'``, build ``f ⊥ g`` on ``X``.

    ``flavor`` selects which square is produced:

    * ``"uniform"``: ``h f′ = f h`` and ``h g′ = g``;
    * ``"lax"``: ``f h ≤ h f′`` and ``g ≤ h g′``;
    * ``"colax"``: ``h f′ ≤ f h`` and ``h g′ ≤ g``.
    """
    x = h.dom
    pre: dict[int, list[int]] = {}
    for p, y in enumerate(h.t):
        if y >= 0:
            pre.setdefault(y, []).append(p)
    outside = [p for p, y in enumerate(h.t) if y < 0]
    ft = [UNDEF] * x.size
    gt = [UNDEF] * x.size
    for p in range(x.size):
        y = h.t[p]
        fy = f2.t[y] if y >= 0 else UNDEF
        gy = g2.t[y] if y >= 0 else UNDEF
        if fy >= 0:
            ft[p] = rng.choice(pre[fy])
        elif gy >= 0:
            gt[p] = gy
        elif flavor == "colax":
            r = rng.below(3)
            if r == 0:
                ft[p] = rng.below(x.size)
            elif r == 1 and g2.cod.size:
                gt[p] = rng.below(g2.cod.size)
        elif outside and rng.chance(0.5):
            ft[p] = rng.choice(outside)
        if flavor == "lax" and rng.chance(0.3):
            ft[p] = gt[p] = UNDEF
    return PartialMap._raw(x, x, tuple(ft)), PartialMap._raw(x, g2.cod, tuple(gt))


__all__ = [
    "gen_partial_map", "gen_total_map", "gen_rest_idem", "gen_sub_map", "gen_partition",
    "gen_disjoint_family", "gen_disjoint_pair", "gen_size", "gen_matobj", "gen_matrix",
    "gen_dj", "gen_surjection", "gen_uniform_square",
]
