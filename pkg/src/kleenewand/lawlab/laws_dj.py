"""Laws inside the disjoint-join completion, and the embedding of the base into it."""

from __future__ import annotations

import itertools

from ..djcomp import (
    DjMap,
    dj_compose,
    dj_embed,
    dj_identity,
    dj_join,
    dj_leq,
    dj_perp,
    dj_restriction,
    dj_zero,
    down_set,
)
from ..finpar import FinObj, PartialMap, compose, leq, rest_idem_from_mask, restriction
from ..interference import MAXIMAL, join, perp
from ._common import fail, rand_map, rand_obj
from .gen import gen_disjoint_family, gen_dj
from .registry import Bounds, law

DJ_BOUNDS = Bounds(max_size=4, max_gens=3)
UNDEF = -1


def _dj(rng, b: Bounds, dom: FinObj, cod: FinObj) -> DjMap:
    return gen_dj(rng, dom, cod, b.max_gens)


def _mask_out(s: DjMap, used: int) -> DjMap:
    keep = rest_idem_from_mask(s.dom, ((1 << s.dom.size) - 1) & ~used)
    gens = (compose(keep, f) for f in s.gens)
    return DjMap._raw(s.dom, s.cod, frozenset(f for f in gens if not f.is_zero()))


def _support(s: DjMap) -> int:
    m = 0
    for f in s.gens:
        m |= f.mask()
    return m


def _dj_family(rng, b: Bounds, dom: FinObj, cods: list[FinObj]) -> list[DjMap]:
    """Pairwise disjoint DJ maps: each member avoids the supports of earlier ones."""
    used = 0
    out = []
    for cod in cods:
        s = _mask_out(_dj(rng, b, dom, cod), used)
        used |= _support(s)
        out.append(s)
    return out


def _dj_below(rng, s: DjMap) -> DjMap:
    """A map below ``s``: each generator is cut into at most two pieces, some points dropped."""
    gens = []
    for f in s.sorted_gens():
        pieces = [[UNDEF] * f.dom.size, [UNDEF] * f.dom.size]
        for p, v in enumerate(f.t):
            if v >= 0:
                r = rng.below(3)
                if r < 2:
                    pieces[r][p] = v
        for t in pieces:
            m = PartialMap._raw(f.dom, f.cod, tuple(t))
            if not m.is_zero():
                gens.append(m)
    return DjMap._raw(s.dom, s.cod, frozenset(gens))


def _gen_one(rng, b):
    return {"s": _dj(rng, b, rand_obj(rng, b), rand_obj(rng, b))}


def _gen_span(rng, b):
    a = rand_obj(rng, b)
    return {"s": _dj(rng, b, a, rand_obj(rng, b)), "t": _dj(rng, b, a, rand_obj(rng, b))}


def _gen_chain(rng, b):
    a, x = rand_obj(rng, b), rand_obj(rng, b)
    return {"s": _dj(rng, b, a, x), "t": _dj(rng, b, x, rand_obj(rng, b))}


# -- restriction axioms ------------------------------------------------------------------

@law("DJ.R.1", "dj", "S̄ S = S in the completion", DJ_BOUNDS)
def _r1():
    def check(c, impl):
        s = c["s"]
        if dj_compose(dj_restriction(s), s) != s:
            return fail("S̄ S ≠ S", s=s)
    return _gen_one, check


@law("DJ.R.2", "dj", "S̄ T̄ = T̄ S̄ in the completion", DJ_BOUNDS)
def _r2():
    def check(c, impl):
        sb, tb = dj_restriction(c["s"]), dj_restriction(c["t"])
        if dj_compose(sb, tb) != dj_compose(tb, sb):
            return fail("S̄ T̄ ≠ T̄ S̄")
    return _gen_span, check


@law("DJ.R.3", "dj", "restriction of T̄ S equals T̄ S̄ in the completion", DJ_BOUNDS)
def _r3():
    def check(c, impl):
        s, t = c["s"], c["t"]
        tb = dj_restriction(t)
        if dj_restriction(dj_compose(tb, s)) != dj_compose(tb, dj_restriction(s)):
            return fail("restriction(T̄ S) ≠ T̄ S̄")
    return _gen_span, check


@law("DJ.R.4", "dj", "S T̄ = (restriction of S T) S in the completion", DJ_BOUNDS)
def _r4():
    def check(c, impl):
        s, t = c["s"], c["t"]
        if dj_compose(s, dj_restriction(t)) != dj_compose(dj_restriction(dj_compose(s, t)), s):
            return fail("S T̄ ≠ restriction(S T) S")
    return _gen_chain, check


@law("DJ.order", "dj",
     "S ≤ T iff S̄ T = S iff the down-set of S is contained in the down-set of T", DJ_BOUNDS)
def _order():
    def gen(rng, b):
        a, x = rand_obj(rng, b), rand_obj(rng, b)
        t = _dj(rng, b, a, x)
        s = _dj_below(rng, t) if rng.chance(0.6) else _dj(rng, b, a, x)
        return {"s": s, "t": t}

    def check(c, impl):
        s, t = c["s"], c["t"]
        by_gens = dj_leq(s, t)
        by_restriction = dj_compose(dj_restriction(s), t) == s
        by_sets = down_set(s) <= down_set(t)
        if not by_gens == by_restriction == by_sets:
            return fail("order tests disagree", generators=by_gens, restriction=by_restriction,
                        down_sets=by_sets)
    return gen, check


# -- interference --------------------------------------------------------------------------

def _gen_perp_pair(rng, b):
    a = rand_obj(rng, b)
    if rng.chance(0.8):
        s, t = _dj_family(rng, b, a, [rand_obj(rng, b), rand_obj(rng, b)])
    else:
        s, t = _dj(rng, b, a, rand_obj(rng, b)), _dj(rng, b, a, rand_obj(rng, b))
    return {"s": s, "t": t}


@law("DJ.⊥.0", "dj", "1 ⊥ 0 in the completion", DJ_BOUNDS)
def _p0():
    def gen(rng, b):
        return {"a": rng.between(0, b.max_size), "b": rng.between(0, b.max_size)}

    def check(c, impl):
        a = FinObj(c["a"])
        if not dj_perp(dj_identity(a), dj_zero(a, FinObj(c["b"]))):
            return fail("1 and 0 not disjoint")
    return gen, check


@law("DJ.⊥.1", "dj", "S ⊥ T implies T ⊥ S in the completion", DJ_BOUNDS)
def _p1():
    def check(c, impl):
        if dj_perp(c["s"], c["t"]) != dj_perp(c["t"], c["s"]):
            return fail("asymmetric")
    return _gen_perp_pair, check


@law("DJ.⊥.2", "dj", "S ⊥ S implies S = 0 in the completion", DJ_BOUNDS)
def _p2():
    def check(c, impl):
        s = c["s"]
        if dj_perp(s, s) and s.gens:
            return fail("nonzero map disjoint from itself")
    return _gen_one, check


@law("DJ.⊥.3", "dj", "S′ ⊥ T′, S ≤ S′, T ≤ T′ imply S ⊥ T in the completion", DJ_BOUNDS)
def _p3():
    def gen(rng, b):
        c = _gen_perp_pair(rng, b)
        return {"s2": c["s"], "t2": c["t"], "s": _dj_below(rng, c["s"]),
                "t": _dj_below(rng, c["t"])}

    def check(c, impl):
        if not (dj_leq(c["s"], c["s2"]) and dj_leq(c["t"], c["t2"])):
            return fail("generated maps are not below their bounds")
        if dj_perp(c["s2"], c["t2"]) and not dj_perp(c["s"], c["t"]):
            return fail("not downward closed")
    return gen, check


@law("DJ.⊥.4", "dj", "S ⊥ T implies H S K ⊥ H T K′ in the completion", DJ_BOUNDS)
def _p4():
    def gen(rng, b):
        c = _gen_perp_pair(rng, b)
        s, t = c["s"], c["t"]
        c["h"] = _dj(rng, b, rand_obj(rng, b), s.dom)
        c["k"] = _dj(rng, b, s.cod, rand_obj(rng, b))
        c["k2"] = _dj(rng, b, t.cod, rand_obj(rng, b))
        return c

    def check(c, impl):
        s, t, h = c["s"], c["t"], c["h"]
        if dj_perp(s, t):
            lhs = dj_compose(dj_compose(h, s), c["k"])
            rhs = dj_compose(dj_compose(h, t), c["k2"])
            if not dj_perp(lhs, rhs):
                return fail("disjointness lost under composition")
    return gen, check


@law("DJ.⊥.5", "dj", "S ⊥ T implies S̄ ⊥ T̄ in the completion", DJ_BOUNDS)
def _p5():
    def check(c, impl):
        s, t = c["s"], c["t"]
        if dj_perp(s, t) and not dj_perp(dj_restriction(s), dj_restriction(t)):
            return fail("restrictions not disjoint")
    return _gen_perp_pair, check


# -- joins ------------------------------------------------------------------------------

def _gen_family(rng, b):
    a, x = rand_obj(rng, b), rand_obj(rng, b)
    k = rng.between(0, 3)
    return {"fam": _dj_family(rng, b, a, [x] * k), "a": a.size, "x": x.size}


def _fam_join(c) -> DjMap:
    return dj_join(c["fam"], FinObj(c["a"]), FinObj(c["x"]))


@law("DJ.⊔.1", "dj", "each member lies below the join in the completion", DJ_BOUNDS)
def _j1():
    def check(c, impl):
        j = _fam_join(c)
        for i, s in enumerate(c["fam"]):
            if not dj_leq(s, j):
                return fail("member %d not below the join" % i)
    return _gen_family, check


@law("DJ.⊔.2", "dj", "the join lies below every common upper bound in the completion",
     DJ_BOUNDS)
def _j2():
    def gen(rng, b):
        a, x = rand_obj(rng, b), rand_obj(rng, b)
        t = _dj(rng, b, a, x)
        k = rng.between(0, 3)
        # members below t that are pairwise disjoint: split t, then hand pieces out
        pieces = sorted(_dj_below(rng, t).gens, key=lambda m: m.t)
        owners = [rng.below(k) if k else -1 for _ in pieces]
        fam = [DjMap._raw(a, x, frozenset(p for p, o in zip(pieces, owners) if o == i))
               for i in range(k)]
        return {"fam": fam, "t": t, "a": a.size, "x": x.size}

    def check(c, impl):
        t = c["t"]
        if not all(dj_leq(s, t) for s in c["fam"]):
            return None
        if not dj_leq(_fam_join(c), t):
            return fail("join not below an upper bound")
    return gen, check


@law("DJ.⊔.3", "dj", "H (⊔ Sᵢ) = ⊔ H Sᵢ in the completion", DJ_BOUNDS)
def _j3():
    def gen(rng, b):
        c = _gen_family(rng, b)
        c["h"] = _dj(rng, b, rand_obj(rng, b), FinObj(c["a"]))
        return c

    def check(c, impl):
        h = c["h"]
        lhs = dj_compose(h, _fam_join(c))
        rhs = dj_join([dj_compose(h, s) for s in c["fam"]], h.dom, FinObj(c["x"]))
        if lhs != rhs:
            return fail("pre-composition does not distribute")
    return gen, check


@law("DJ.⊔.4", "dj", "joins are strong in the completion", DJ_BOUNDS)
def _j4():
    def gen(rng, b):
        a, x, y = rand_obj(rng, b), rand_obj(rng, b), rand_obj(rng, b)
        k = rng.between(0, 3)
        parts = _dj_family(rng, b, a, [x] * k + [y])
        return {"fam": parts[:k], "h": parts[k], "a": a.size, "x": x.size}

    def check(c, impl):
        h = c["h"]
        if all(dj_perp(s, h) for s in c["fam"]) and not dj_perp(_fam_join(c), h):
            return fail("join not disjoint from h")
    return gen, check


# -- the embedding and canonical form -------------------------------------------------------

@law("DJ.embed", "dj",
     "the embedding is injective and preserves composition, restriction, zero, order, ⊥ and ⊔",
     DJ_BOUNDS)
def _embed():
    def gen(rng, b):
        a, x, y = rand_obj(rng, b), rand_obj(rng, b), rand_obj(rng, b)
        f, f2 = gen_disjoint_family(rng, a, [x, x])
        if rng.chance(0.3):
            f2 = rand_map(rng, a, x)
        return {"f": f, "f2": f2, "g": rand_map(rng, x, y)}

    def check(c, impl):
        f, f2, g = c["f"], c["f2"], c["g"]
        ef, ef2 = dj_embed(f), dj_embed(f2)
        if dj_embed(compose(f, g)) != dj_compose(ef, dj_embed(g)):
            return fail("composition not preserved")
        if dj_embed(restriction(f)) != dj_restriction(ef):
            return fail("restriction not preserved")
        if (ef == ef2) != (f == f2):
            return fail("embedding not injective")
        if dj_leq(ef, ef2) != leq(f, f2):
            return fail("order not preserved and reflected")
        if dj_perp(ef, ef2) != perp(MAXIMAL, f, f2):
            return fail("disjointness not preserved and reflected")
        if perp(MAXIMAL, f, f2) and f.is_zero() + f2.is_zero() == 0:
            # the join in the completion keeps the members apart; the base join merges them
            merged = dj_embed(join(MAXIMAL, [f, f2]))
            if dj_join([ef, ef2]) == merged or not dj_leq(dj_join([ef, ef2]), merged):
                return fail("join of embeddings misplaced against the embedded join")
        if dj_compose(ef, dj_identity(f.cod)) != ef or dj_compose(dj_identity(f.dom), ef) != ef:
            return fail("identity not preserved")
    return gen, check


@law("DJ.canonical", "dj",
     "for zero-free pairwise-disjoint generator sets, equal down-sets means equal generators",
     DJ_BOUNDS)
def _canonical():
    def gen(rng, b):
        a, x = rand_obj(rng, b), rand_obj(rng, b)
        s = _dj(rng, b, a, x)
        r = rng.below(3)
        if r == 0:
            t = DjMap._raw(a, x, s.gens)
        elif r == 1:
            t = _dj_below(rng, s)
        else:
            t = _dj(rng, b, a, x)
        return {"s": s, "t": t}

    def check(c, impl):
        s, t = c["s"], c["t"]
        same_sets = down_set(s) == down_set(t)
        if same_sets != (s == t):
            return fail("down-set equality and generator equality disagree")
        if (dj_leq(s, t) and dj_leq(t, s)) != (s == t):
            return fail("mutual order and equality disagree")
        for f, g in itertools.combinations(s.sorted_gens(), 2):
            if leq(f, g) or leq(g, f):
                return fail("generators are comparable")
    return gen, check
