"""Laws of the Kleene wand, the classical structure and the upper star.

Every check evaluates the wand through ``impl.wand`` (and the star through
``impl.star``), so running a law against a mutated implementation exercises
the same statements against the wrong operator.
"""

from __future__ import annotations

import itertools

from ..finpar import (
    FinObj,
    PartialMap,
    compose,
    compose_all,
    is_total,
    leq,
    power,
    restriction,
    zero,
)
from ..interference import MAXIMAL, MINIMAL, join, perp
from ..wand import (
    complement,
    kleene_wand,
    relative_complement,
    star_to_wand,
    unrolled,
    wand_delta,
    wand_to_star,
)
from ._common import fail, rand_map, rand_obj
from .enumeration import ENUM_MAX_A, ENUM_MAX_X, all_maps, enumerate_all
from .gen import (
    gen_disjoint_family,
    gen_disjoint_pair,
    gen_sub_map,
    gen_surjection,
    gen_total_map,
    gen_uniform_square,
)
from .oracle import star_simulate, wand_simulate
from .registry import ALIASES, Bounds, law

WAND_BOUNDS = Bounds(max_size=5)
WIDE = Bounds(max_size=6)
TINY = Bounds(max_size=3)
UNDEF = -1


def _a(rng, b: Bounds) -> FinObj:
    return FinObj(rng.between(0, min(3, b.max_size)))


def _pair(rng, b: Bounds, lo: int = 0):
    x = rand_obj(rng, b, lo)
    f, g = gen_disjoint_pair(rng, x, _a(rng, b))
    return {"f": f, "g": g}


def _exh_pairs(b: Bounds):
    for x in range(min(b.max_size, ENUM_MAX_X) + 1):
        for a in range(ENUM_MAX_A + 1):
            for f, g in enumerate_all(x, a):
                yield {"f": f, "g": g}


def _exh_endos(b: Bounds):
    for x in range(b.max_size + 1):
        for f in all_maps(x, x):
            yield {"f": f}


# -- the defining axioms ------------------------------------------------------------

@law("⩚.1", "wand", "g ⊔ f (f ⩚ g) = f ⩚ g", WAND_BOUNDS, _exh_pairs, TINY)
def _w1():
    def check(c, impl):
        f, g = c["f"], c["g"]
        w = impl.wand(f, g)
        lhs = join(MAXIMAL, [g, compose(f, w)])
        if lhs != w:
            return fail("g ⊔ f(f ⩚ g) ≠ f ⩚ g", lhs=lhs, wand=w)
    return _pair, check


@law("⩚.2", "wand", "(f ⩚ g) h = f ⩚ g h", WAND_BOUNDS)
def _w2():
    def gen(rng, b):
        c = _pair(rng, b)
        c["h"] = rand_map(rng, c["g"].cod, _a(rng, b))
        return c

    def check(c, impl):
        f, g, h = c["f"], c["g"], c["h"]
        lhs = compose(impl.wand(f, g), h)
        rhs = impl.wand(f, compose(g, h))
        if lhs != rhs:
            return fail("(f ⩚ g) h ≠ f ⩚ gh", lhs=lhs, rhs=rhs)
    return gen, check


@law("⩚.3", "wand", "f ⊥ g implies k f ⩚ k g = k (f k ⩚ g)", WAND_BOUNDS)
def _w3():
    def gen(rng, b):
        x, y = rand_obj(rng, b), rand_obj(rng, b)
        f, g = gen_disjoint_family(rng, x, [y, _a(rng, b)])
        return {"f": f, "g": g, "k": rand_map(rng, y, x)}

    def check(c, impl):
        f, g, k = c["f"], c["g"], c["k"]
        lhs = impl.wand(compose(k, f), compose(k, g))
        rhs = compose(k, impl.wand(compose(f, k), g))
        if lhs != rhs:
            return fail("kf ⩚ kg ≠ k(fk ⩚ g)", lhs=lhs, rhs=rhs)
    return gen, check


@law("⩚.4", "wand",
     "f ⊥ f′ and f ⊔ f′ ⊥ g imply (f ⩚ f′) ⊥ (f ⩚ g) and (f ⊔ f′) ⩚ g = (f ⩚ f′) ⩚ (f ⩚ g)",
     WAND_BOUNDS)
def _w4():
    def gen(rng, b):
        x = rand_obj(rng, b)
        f, f2, g = gen_disjoint_family(rng, x, [x, x, _a(rng, b)])
        return {"f": f, "f2": f2, "g": g}

    def check(c, impl):
        f, f2, g = c["f"], c["f2"], c["g"]
        w_ff, w_fg = impl.wand(f, f2), impl.wand(f, g)
        if not perp(MAXIMAL, w_ff, w_fg):
            return fail("f ⩚ f′ and f ⩚ g overlap", left=w_ff, right=w_fg)
        lhs = impl.wand(join(MAXIMAL, [f, f2]), g)
        rhs = impl.wand(w_ff, w_fg)
        if lhs != rhs:
            return fail("(f ⊔ f′) ⩚ g ≠ (f ⩚ f′) ⩚ (f ⩚ g)", lhs=lhs, rhs=rhs)
    return gen, check


# -- the alternative axioms -----------------------------------------------------------

@law("Alt.⩚.1", "wand", "g ⊔ f (f ⩚ g) ≤ f ⩚ g", WAND_BOUNDS)
def _alt1():
    def check(c, impl):
        f, g = c["f"], c["g"]
        w = impl.wand(f, g)
        if not leq(join(MAXIMAL, [g, compose(f, w)]), w):
            return fail("g ⊔ f(f ⩚ g) is not below f ⩚ g")
    return _pair, check


def _preimages(m: PartialMap) -> tuple[dict[int, list[int]], list[int]]:
    pre: dict[int, list[int]] = {}
    for p, y in enumerate(m.t):
        if y >= 0:
            pre.setdefault(y, []).append(p)
    return pre, [p for p, y in enumerate(m.t) if y < 0]


def _alt2_square(rng, a: PartialMap, b: PartialMap, f2: PartialMap, g2: PartialMap):
    """``f ⊥ g`` on ``a.dom`` with ``a f′ = f a`` and ``a g′ = g b``, for surjective ``a``, ``b``."""
    pre_a, out_a = _preimages(a)
    pre_b, out_b = _preimages(b)
    x = a.dom
    ft, gt = [UNDEF] * x.size, [UNDEF] * x.size
    for p in range(x.size):
        y = a.t[p]
        fy = f2.t[y] if y >= 0 else UNDEF
        gy = g2.t[y] if y >= 0 else UNDEF
        if fy >= 0:
            ft[p] = rng.choice(pre_a[fy])
        elif gy >= 0:
            gt[p] = rng.choice(pre_b[gy])
        else:
            r = rng.below(3)
            if r == 0 and out_a:
                ft[p] = rng.choice(out_a)
            elif r == 1 and out_b:
                gt[p] = rng.choice(out_b)
    return PartialMap._raw(x, x, tuple(ft)), PartialMap._raw(x, b.dom, tuple(gt))


@law("Alt.⩚.2", "wand", "a g′ = g b and a f′ = f a imply a (f′ ⩚ g′) = (f ⩚ g) b",
     WAND_BOUNDS)
def _alt2():
    def gen(rng, b):
        x = rand_obj(rng, b)
        x2 = FinObj(rng.between(0, x.size))
        big_a = _a(rng, b)
        a2 = FinObj(rng.between(0, big_a.size))
        amap = gen_surjection(rng, x, x2)
        bmap = gen_surjection(rng, big_a, a2)
        f2, g2 = gen_disjoint_pair(rng, x2, a2)
        f, g = _alt2_square(rng, amap, bmap, f2, g2)
        return {"f": f, "g": g, "f2": f2, "g2": g2, "a": amap, "b": bmap}

    def check(c, impl):
        f, g, f2, g2, a, b_ = c["f"], c["g"], c["f2"], c["g2"], c["a"], c["b"]
        if compose(a, g2) != compose(g, b_) or compose(a, f2) != compose(f, a):
            return None
        lhs = compose(a, impl.wand(f2, g2))
        rhs = compose(impl.wand(f, g), b_)
        if lhs != rhs:
            return fail("a(f′ ⩚ g′) ≠ (f ⩚ g) b", lhs=lhs, rhs=rhs)
    return gen, check


def _gen_inductive(rng, b):
    """``h``, ``g ≤ h`` and ``f ⊥ g`` with ``f h ≤ h``."""
    x = rand_obj(rng, b)
    h = rand_map(rng, x, _a(rng, b))
    g = gen_sub_map(rng, h)
    undef_h = [p for p, v in enumerate(h.t) if v < 0]
    same: dict[int, list[int]] = {}
    for p, v in enumerate(h.t):
        if v >= 0:
            same.setdefault(v, []).append(p)
    ft = []
    for p in range(x.size):
        if g.t[p] >= 0 or rng.chance(0.2):
            ft.append(UNDEF)
            continue
        pool = list(undef_h)
        if h.t[p] >= 0:
            pool += same[h.t[p]]
        ft.append(rng.choice(pool) if pool else UNDEF)
    return {"f": PartialMap._raw(x, x, tuple(ft)), "g": g, "h": h}


@law("Alt.⩚.3", "wand", "f h ≤ h and g ≤ h imply f ⩚ g ≤ h (inductivity)", WAND_BOUNDS)
def _alt3():
    def check(c, impl):
        f, g, h = c["f"], c["g"], c["h"]
        if not (leq(compose(f, h), h) and leq(g, h)):
            return None
        w = impl.wand(f, g)
        if not leq(w, h):
            return fail("f ⩚ g is not below h", wand=w, h=h)
    return _gen_inductive, check


ALIASES["⩚.inductive"] = "Alt.⩚.3"


# -- derived identities -----------------------------------------------------------------

@law("⩚.guard-factor", "wand", "f ⩚ g = (f ⩚ ḡ) g", WAND_BOUNDS)
def _guard_factor():
    def check(c, impl):
        f, g = c["f"], c["g"]
        lhs = impl.wand(f, g)
        rhs = compose(impl.wand(f, restriction(g)), g)
        if lhs != rhs:
            return fail("f ⩚ g ≠ (f ⩚ ḡ) g", lhs=lhs, rhs=rhs)
    return _pair, check


@law("⩚.zero-body", "wand", "0 ⩚ g = g", WAND_BOUNDS)
def _zero_body():
    def gen(rng, b):
        x = rand_obj(rng, b)
        return {"g": rand_map(rng, x, _a(rng, b))}

    def check(c, impl):
        g = c["g"]
        w = impl.wand(zero(g.dom, g.dom), g)
        if w != g:
            return fail("0 ⩚ g ≠ g", wand=w)
    return gen, check


@law("⩚.zero-guard", "wand", "f ⩚ 0 = 0", WAND_BOUNDS)
def _zero_guard():
    def gen(rng, b):
        x = rand_obj(rng, b)
        return {"f": rand_map(rng, x, x), "a": _a(rng, b).size}

    def check(c, impl):
        f = c["f"]
        w = impl.wand(f, zero(f.dom, c["a"]))
        if not w.is_zero():
            return fail("f ⩚ 0 ≠ 0", wand=w)
    return gen, check


@law("⩚.guard-join", "wand", "f ⊥ g ⊔ g′ implies f ⩚ (g ⊔ g′) = f ⩚ g ⊔ f ⩚ g′",
     WAND_BOUNDS)
def _guard_join():
    def gen(rng, b):
        x, a = rand_obj(rng, b), _a(rng, b)
        f, g, g2 = gen_disjoint_family(rng, x, [x, a, a])
        return {"f": f, "g": g, "g2": g2}

    def check(c, impl):
        f, g, g2 = c["f"], c["g"], c["g2"]
        lhs = impl.wand(f, join(MAXIMAL, [g, g2]))
        rhs = join(MAXIMAL, [impl.wand(f, g), impl.wand(f, g2)])
        if lhs != rhs:
            return fail("f ⩚ (g ⊔ g′) ≠ f ⩚ g ⊔ f ⩚ g′", lhs=lhs, rhs=rhs)
    return gen, check


@law("⩚.total-body", "wand", "f total implies f ⩚ g = 0", WAND_BOUNDS)
def _total_body():
    def gen(rng, b):
        x = rand_obj(rng, b, 1)
        return {"f": gen_total_map(rng, x, x), "a": _a(rng, b).size}

    def check(c, impl):
        f = c["f"]
        # g ⊥ f with f total forces g = 0
        w = impl.wand(f, zero(f.dom, c["a"]))
        if not is_total(f) or not w.is_zero():
            return fail("f ⩚ g ≠ 0 for total f", wand=w)
    return gen, check


@law("⩚.total-guard", "wand", "g total implies f ⩚ g = g", WAND_BOUNDS)
def _total_guard():
    def gen(rng, b):
        x = rand_obj(rng, b)
        a = FinObj(rng.between(1, max(1, min(3, b.max_size))))
        return {"g": gen_total_map(rng, x, a)}

    def check(c, impl):
        g = c["g"]
        # f ⊥ g with g total forces f = 0
        w = impl.wand(zero(g.dom, g.dom), g)
        if w != g:
            return fail("f ⩚ g ≠ g for total g", wand=w)
    return gen, check


@law("⩚.unroll", "wand",
     "f ⩚ g = g ⊔ f g ⊔ … ⊔ fⁿ g ⊔ fⁿ⁺¹ (f ⩚ g) for n ≤ 4, with the fⁿ g pairwise disjoint",
     WAND_BOUNDS)
def _unroll():
    def check(c, impl):
        f, g = c["f"], c["g"]
        w = impl.wand(f, g)
        terms = [compose(power(f, k), g) for k in range(f.dom.size + 2)]
        for (i, s), (j, t) in itertools.combinations(enumerate(terms), 2):
            if not perp(MAXIMAL, s, t):
                return fail("terms f^%d g and f^%d g overlap" % (i, j))
        for n in range(5):
            u = unrolled(f, g, n, impl.wand)
            if u != w:
                return fail("unrolling at n=%d differs" % n, unrolled=u, wand=w)
    return _pair, check


# -- uniformity and minimality ------------------------------------------------------------

def _square_gen(flavor: str):
    def gen(rng, b):
        x = rand_obj(rng, b)
        x2 = FinObj(rng.between(0, x.size))
        h = gen_surjection(rng, x, x2)
        f2, g2 = gen_disjoint_pair(rng, x2, _a(rng, b))
        f, g = gen_uniform_square(rng, h, f2, g2, flavor)
        return {"f": f, "g": g, "f2": f2, "g2": g2, "h": h}
    return gen


@law("⩚.uniform", "wand", "h g′ = g and h f′ = f h imply h (f′ ⩚ g′) = f ⩚ g", WAND_BOUNDS)
def _uniform():
    def check(c, impl):
        f, g, f2, g2, h = c["f"], c["g"], c["f2"], c["g2"], c["h"]
        if compose(h, g2) != g or compose(h, f2) != compose(f, h):
            return None
        lhs = compose(h, impl.wand(f2, g2))
        rhs = impl.wand(f, g)
        if lhs != rhs:
            return fail("h(f′ ⩚ g′) ≠ f ⩚ g", lhs=lhs, rhs=rhs)
    return _square_gen("uniform"), check


@law("⩚.lax", "wand", "g ≤ h g′ and f h ≤ h f′ imply f ⩚ g ≤ h (f′ ⩚ g′)", WAND_BOUNDS)
def _lax():
    def check(c, impl):
        f, g, f2, g2, h = c["f"], c["g"], c["f2"], c["g2"], c["h"]
        if not (leq(g, compose(h, g2)) and leq(compose(f, h), compose(h, f2))):
            return None
        if not leq(impl.wand(f, g), compose(h, impl.wand(f2, g2))):
            return fail("f ⩚ g is not below h(f′ ⩚ g′)")
    return _square_gen("lax"), check


@law("⩚.colax", "wand", "h g′ ≤ g and h f′ ≤ f h imply h (f′ ⩚ g′) ≤ f ⩚ g", WAND_BOUNDS)
def _colax():
    def check(c, impl):
        f, g, f2, g2, h = c["f"], c["g"], c["f2"], c["g2"], c["h"]
        if not (leq(compose(h, g2), g) and leq(compose(h, f2), compose(f, h))):
            return None
        if not leq(compose(h, impl.wand(f2, g2)), impl.wand(f, g)):
            return fail("h(f′ ⩚ g′) is not below f ⩚ g")
    return _square_gen("colax"), check


@law("⩚.minimal", "wand", "the canonical wand lies below the wand under test", WAND_BOUNDS,
     _exh_pairs, TINY)
def _minimal():
    def check(c, impl):
        f, g = c["f"], c["g"]
        if not leq(kleene_wand(f, g), impl.wand(f, g)):
            return fail("canonical wand not below the wand under test")
    return _pair, check


@law("⩚.delta", "wand", "under ⊥δ the wand is f ⩚ g = g", WAND_BOUNDS)
def _delta():
    def gen(rng, b):
        c = _pair(rng, b)
        if rng.chance(0.5):
            c["f"] = zero(c["f"].dom, c["f"].cod)
        else:
            c["g"] = zero(c["g"].dom, c["g"].cod)
        return c

    def check(c, impl):
        f, g = c["f"], c["g"]
        if not perp(MINIMAL, f, g):
            return None
        for name, w in (("canonical", kleene_wand(f, g, MINIMAL)), ("delta", wand_delta(f, g)),
                        ("impl", impl.wand(f, g))):
            if w != g:
                return fail("%s wand differs from g" % name, wand=w)
    return gen, check


@law("⩚.oracle", "wand", "the wand agrees pointwise with step simulation", WIDE,
     _exh_pairs, TINY)
def _oracle():
    def gen(rng, b):
        x = rand_obj(rng, b)
        f, g = gen_disjoint_family(rng, x, [x, _a(rng, b)])
        return {"f": f, "g": g}

    def check(c, impl):
        f, g = c["f"], c["g"]
        w = impl.wand(f, g)
        sim = wand_simulate(f, g)
        if w != sim:
            x = next(p for p in range(f.dom.size) if w.t[p] != sim.t[p])
            return fail("disagreement at %d" % x, wand=w.table[x], oracle=sim.table[x])
    return gen, check


# -- classical structure and the star ------------------------------------------------------

def _exh_below(b: Bounds):
    for n in range(b.max_size + 1):
        for m in range(b.max_size + 1):
            for g in all_maps(n, m):
                mask = g.mask()
                sub = mask
                while True:
                    f = PartialMap._raw(g.dom, g.cod, tuple(
                        v if sub >> p & 1 else UNDEF for p, v in enumerate(g.t)))
                    yield {"f": f, "g": g}
                    if sub == 0:
                        break
                    sub = (sub - 1) & mask


def _gen_below(rng, b):
    g = rand_map(rng, rand_obj(rng, b), rand_obj(rng, b))
    return {"f": gen_sub_map(rng, g), "g": g}


@law("\\.1", "classical", "f ≤ g implies g \\ f ⊥ f", WIDE, _exh_below, TINY)
def _rc1():
    def check(c, impl):
        f, g = c["f"], c["g"]
        if not perp(MAXIMAL, relative_complement(f, g), f):
            return fail("g \\ f overlaps f")
    return _gen_below, check


@law("\\.2", "classical", "f ≤ g implies (g \\ f) ⊔ f = g", WIDE, _exh_below, TINY)
def _rc2():
    def check(c, impl):
        f, g = c["f"], c["g"]
        if join(MAXIMAL, [relative_complement(f, g), f]) != g:
            return fail("(g \\ f) ⊔ f ≠ g")
    return _gen_below, check


def _gen_endo(rng, b):
    x = rand_obj(rng, b)
    return {"f": rand_map(rng, x, x)}


@law("⋆.1", "star", "f̄ᶜ ⊔ f f⋆ = f⋆", WIDE, _exh_endos, TINY)
def _s1():
    def check(c, impl):
        f = c["f"]
        s = impl.star(f)
        lhs = join(MAXIMAL, [complement(restriction(f)), compose(f, s)])
        if lhs != s:
            return fail("f̄ᶜ ⊔ f f⋆ ≠ f⋆", lhs=lhs, star=s)
    return _gen_endo, check


def _exh_s2(b: Bounds):
    for x in range(b.max_size + 1):
        for y in range(b.max_size + 1):
            fs = list(all_maps(y, x))
            for h in all_maps(x, y):
                for f in fs:
                    yield {"h": h, "f": f}


@law("⋆.2", "star", "(h f)⋆ h = h (f h)⋆ f̄ᶜ for h: X → Y, f: Y → X", WIDE, _exh_s2, TINY)
def _s2():
    def gen(rng, b):
        x, y = rand_obj(rng, b), rand_obj(rng, b)
        return {"h": rand_map(rng, x, y), "f": rand_map(rng, y, x)}

    def check(c, impl):
        h, f = c["h"], c["f"]
        lhs = compose(impl.star(compose(h, f)), h)
        rhs = compose_all(h, impl.star(compose(f, h)), complement(restriction(f)))
        if lhs != rhs:
            return fail("(hf)⋆ h ≠ h (fh)⋆ f̄ᶜ", lhs=lhs, rhs=rhs)
    return gen, check


def _exh_disjoint_endos(b: Bounds):
    for x in range(b.max_size + 1):
        o = FinObj(x)
        choices = [(UNDEF, UNDEF)] + [(y, UNDEF) for y in range(x)] + [(UNDEF, y) for y in range(x)]
        for pick in itertools.product(choices, repeat=x):
            yield {"f": PartialMap._raw(o, o, tuple(p[0] for p in pick)),
                   "g": PartialMap._raw(o, o, tuple(p[1] for p in pick))}


@law("⋆.3", "star", "f ⊥ g implies (f ⊔ g)⋆ = (f⋆ g)⋆ f⋆", WIDE, _exh_disjoint_endos, TINY)
def _s3():
    def gen(rng, b):
        x = rand_obj(rng, b)
        f, g = gen_disjoint_family(rng, x, [x, x])
        return {"f": f, "g": g}

    def check(c, impl):
        f, g = c["f"], c["g"]
        lhs = impl.star(join(MAXIMAL, [f, g]))
        fs = impl.star(f)
        rhs = compose(impl.star(compose(fs, g)), fs)
        if lhs != rhs:
            return fail("(f ⊔ g)⋆ ≠ (f⋆ g)⋆ f⋆", lhs=lhs, rhs=rhs)
    return gen, check


@law("⋆.roundtrip-wand", "star", "the wand of the star of a wand is the wand: f⋆ g = f ⩚ g",
     WIDE, _exh_pairs, TINY)
def _rt_wand():
    def check(c, impl):
        f, g = c["f"], c["g"]
        back = star_to_wand(impl.star, f, g)
        w = impl.wand(f, g)
        if back != w:
            return fail("wand → star → wand changed the result", wand=w, roundtrip=back)
    return _pair, check


@law("⋆.roundtrip-star", "star", "the star of the wand of a star is the star", WIDE,
     _exh_endos, TINY)
def _rt_star():
    def check(c, impl):
        f = c["f"]
        s = impl.star(f)
        back = wand_to_star(lambda f_, g_: star_to_wand(impl.star, f_, g_), f)
        if back != s:
            return fail("star → wand → star changed the result", star=s, roundtrip=back)
    return _gen_endo, check


@law("⋆.oracle", "star",
     "f⋆ agrees with running f until stuck, and with the join of fⁿ f̄ᶜ", WIDE, _exh_endos, TINY)
def _s_oracle():
    def check(c, impl):
        f = c["f"]
        s = impl.star(f)
        for x in range(f.dom.size):
            want = star_simulate(f, x)
            if s.table[x] != want:
                return fail("disagreement at %d" % x, star=s.table[x], oracle=want)
        ec = complement(restriction(f))
        terms = [compose(power(f, n), ec) for n in range(f.dom.size + 1)]
        if join(MAXIMAL, terms) != s:
            return fail("f⋆ differs from the join of fⁿ f̄ᶜ")
    return _gen_endo, check

