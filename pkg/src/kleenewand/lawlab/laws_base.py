"""Laws of the base model: restriction, interference and joins."""

from __future__ import annotations

import itertools

from ..finpar import (
    FinObj,
    compose,
    compose_all,
    identity,
    leq,
    rest_idem_from_mask,
    restriction,
    zero,
)
from ..interference import (
    AXIOMS,
    MAXIMAL,
    MINIMAL,
    InterferenceRel,
    idem_perp,
    join,
    perp,
    validate_interference,
)
from ._common import density as _density
from ._common import fail as _fail
from ._common import rand_map as _map
from ._common import rand_obj as _obj
from .enumeration import all_maps
from .gen import gen_disjoint_family, gen_partial_map, gen_sub_map
from .registry import Bounds, law

RELS = (MAXIMAL, MINIMAL)
SMALL = Bounds(max_size=3)
R_BOUNDS = Bounds(max_size=8)


# -- restriction axioms -------------------------------------------------------------

def _exh_one(b: Bounds):
    for n in range(b.max_size + 1):
        for m in range(b.max_size + 1):
            for f in all_maps(n, m):
                yield {"f": f}


def _exh_span(b: Bounds):
    r = range(b.max_size + 1)
    for a, x, y in itertools.product(r, r, r):
        gs = list(all_maps(a, y))
        for f in all_maps(a, x):
            for g in gs:
                yield {"f": f, "g": g}


def _exh_chain(b: Bounds):
    r = range(b.max_size + 1)
    for a, x, y in itertools.product(r, r, r):
        gs = list(all_maps(x, y))
        for f in all_maps(a, x):
            for g in gs:
                yield {"f": f, "g": g}


def _gen_one(rng, b):
    return {"f": _map(rng, _obj(rng, b), _obj(rng, b))}


def _gen_span(rng, b):
    a = _obj(rng, b)
    return {"f": _map(rng, a, _obj(rng, b)), "g": _map(rng, a, _obj(rng, b))}


def _gen_chain(rng, b):
    a, x = _obj(rng, b), _obj(rng, b)
    return {"f": _map(rng, a, x), "g": _map(rng, x, _obj(rng, b))}


@law("R.1", "restriction", "f̄ f = f", R_BOUNDS, _exh_one, SMALL)
def _r1():
    def check(c, impl):
        f = c["f"]
        if compose(restriction(f), f) != f:
            return _fail("f̄ f ≠ f")
    return _gen_one, check


@law("R.2", "restriction", "f̄ ḡ = ḡ f̄", R_BOUNDS, _exh_span, SMALL)
def _r2():
    def check(c, impl):
        fb, gb = restriction(c["f"]), restriction(c["g"])
        if compose(fb, gb) != compose(gb, fb):
            return _fail("f̄ ḡ ≠ ḡ f̄")
    return _gen_span, check


@law("R.3", "restriction", "restriction of ḡ f equals ḡ f̄", R_BOUNDS, _exh_span, SMALL)
def _r3():
    def check(c, impl):
        f, g = c["f"], c["g"]
        lhs = restriction(compose(restriction(g), f))
        rhs = compose(restriction(g), restriction(f))
        if lhs != rhs:
            return _fail("restriction(ḡ f) ≠ ḡ f̄", lhs=lhs, rhs=rhs)
    return _gen_span, check


@law("R.4", "restriction", "f ḡ = (restriction of f g) f", R_BOUNDS, _exh_chain, SMALL)
def _r4():
    def check(c, impl):
        f, g = c["f"], c["g"]
        lhs = compose(f, restriction(g))
        rhs = compose(restriction(compose(f, g)), f)
        if lhs != rhs:
            return _fail("f ḡ ≠ restriction(f g) f", lhs=lhs, rhs=rhs)
    return _gen_chain, check


@law("R.order", "restriction",
     "≤ is a partial order, composition is monotone, f ≤ g implies f̄ ≤ ḡ, 0 is least",
     Bounds(max_size=6))
def _r_order():
    def gen(rng, b):
        a, x, y = _obj(rng, b), _obj(rng, b), _obj(rng, b)
        g = _map(rng, a, x)
        f = gen_sub_map(rng, g)
        k = _map(rng, x, y)
        h = _map(rng, y, a)
        return {"f": f, "g": g, "k": k, "h": h, "other": _map(rng, a, x)}

    def check(c, impl):
        f, g, k, h, o = c["f"], c["g"], c["k"], c["h"], c["other"]
        if not leq(f, g) or not leq(f, f) or not leq(zero(f.dom, f.cod), o):
            return _fail("order basics fail")
        if leq(o, g) and leq(g, o) and o != g:
            return _fail("≤ is not antisymmetric")
        if leq(o, f) and not leq(o, g):
            return _fail("≤ is not transitive")
        if not leq(compose(f, k), compose(g, k)):
            return _fail("post-composition is not monotone")
        if not leq(compose_all(h, f), compose_all(h, g)):
            return _fail("pre-composition is not monotone")
        if not leq(restriction(f), restriction(g)):
            return _fail("f ≤ g but f̄ ≰ ḡ")
    return gen, check


# -- interference axioms ---------------------------------------------------------------

def _gen_pair(rng, b, related: bool = True):
    """A pair out of one object, disjoint under ⊥₀ when ``related``, plus test maps."""
    a = _obj(rng, b)
    bo, co = _obj(rng, b), _obj(rng, b)
    if related and rng.chance(0.85):
        f, g = gen_disjoint_family(rng, a, [bo, co])
    else:
        f, g = _map(rng, a, bo), _map(rng, a, co)
    if rng.chance(0.2):
        # make ⊥δ relate the pair too
        if rng.chance(0.5):
            f = zero(a, bo)
        else:
            g = zero(a, co)
    return {"f": f, "g": g}


@law("⊥.0", "interference", "1_A ⊥ 0 for ⊥₀ and ⊥δ")
def _p0():
    def gen(rng, b):
        return {"a": rng.between(0, b.max_size), "b": rng.between(0, b.max_size)}

    def check(c, impl):
        a = FinObj(c["a"])
        for rel in RELS:
            if not perp(rel, identity(a), zero(a, FinObj(c["b"]))):
                return _fail("1 not disjoint from 0", rel=rel.kind)
    return gen, check


@law("⊥.1", "interference", "f ⊥ g implies g ⊥ f")
def _p1():
    def check(c, impl):
        for rel in RELS:
            if perp(rel, c["f"], c["g"]) != perp(rel, c["g"], c["f"]):
                return _fail("asymmetric", rel=rel.kind)
    return _gen_pair, check


@law("⊥.2", "interference", "f ⊥ f implies f = 0")
def _p2():
    def gen(rng, b):
        return _gen_one(rng, b)

    def check(c, impl):
        f = c["f"]
        for rel in RELS:
            if perp(rel, f, f) and not f.is_zero():
                return _fail("nonzero map disjoint from itself", rel=rel.kind)
    return gen, check


@law("⊥.3", "interference", "f′ ⊥ g′, f ≤ f′, g ≤ g′ imply f ⊥ g")
def _p3():
    def gen(rng, b):
        c = _gen_pair(rng, b)
        return {"f2": c["f"], "g2": c["g"], "f": gen_sub_map(rng, c["f"]),
                "g": gen_sub_map(rng, c["g"])}

    def check(c, impl):
        for rel in RELS:
            if perp(rel, c["f2"], c["g2"]) and not perp(rel, c["f"], c["g"]):
                return _fail("not downward closed", rel=rel.kind)
    return gen, check


@law("⊥.4", "interference", "f ⊥ g implies h f k ⊥ h g k′")
def _p4():
    def gen(rng, b):
        c = _gen_pair(rng, b)
        f, g = c["f"], c["g"]
        c["h"] = _map(rng, _obj(rng, b), f.dom)
        c["k"] = _map(rng, f.cod, _obj(rng, b))
        c["k2"] = _map(rng, g.cod, _obj(rng, b))
        return c

    def check(c, impl):
        lhs = compose_all(c["h"], c["f"], c["k"])
        rhs = compose_all(c["h"], c["g"], c["k2"])
        for rel in RELS:
            if perp(rel, c["f"], c["g"]) and not perp(rel, lhs, rhs):
                return _fail("disjointness lost under composition", rel=rel.kind)
    return gen, check


@law("⊥.5", "interference", "f ⊥ g implies f̄ ⊥ ḡ")
def _p5():
    def check(c, impl):
        f, g = c["f"], c["g"]
        for rel in RELS:
            if perp(rel, f, g) and not perp(rel, restriction(f), restriction(g)):
                return _fail("restrictions not disjoint", rel=rel.kind)
    return _gen_pair, check


@law("⊥.lemma", "interference", "f ⊥ g implies f̄ g = 0 and ḡ f = 0")
def _p_lemma():
    def check(c, impl):
        f, g = c["f"], c["g"]
        for rel in RELS:
            if perp(rel, f, g):
                if not compose(restriction(f), g).is_zero() or \
                        not compose(restriction(g), f).is_zero():
                    return _fail("disjoint maps overlap", rel=rel.kind)
    return _gen_pair, check


def _random_custom(rng, n: int) -> InterferenceRel:
    """A relation on one object of size ``n``: ⊥₀ thinned to pairs whose profile is allowed.

    Relations that only look at which of the three regions (both, first
    only, second only) are nonempty are closed under pullback, so a random
    down-closed set of profiles gives a relation that usually validates.
    """
    full = (1 << n) - 1
    keep_both_nonempty = rng.chance(0.5)
    pairs = []
    for a in range(full + 1):
        for b_ in range(full + 1):
            if a & b_:
                continue
            if a and b_ and not keep_both_nonempty:
                continue
            pairs.append((a, b_))
    return InterferenceRel.custom({n: pairs})


@law("⊥.sandwich", "interference", "⊥δ ⊆ ⊥ ⊆ ⊥₀ for every validated relation")
def _p_sandwich():
    def gen(rng, b):
        c = _gen_pair(rng, Bounds(max_size=min(b.max_size, 4)))
        c["rel"] = _random_custom(rng, c["f"].dom.size)
        return c

    def check(c, impl):
        f, g = c["f"], c["g"]
        rel = c["rel"]
        rep = validate_interference(rel, f.dom.size)
        if not rep.ok:
            return None
        rel = InterferenceRel(rel.kind, rel.pairs, validated=True)
        for r in (MAXIMAL, MINIMAL, rel):
            if perp(MINIMAL, f, g) and not perp(r, f, g):
                return _fail("⊥δ pair not related", rel=r.kind)
            if perp(r, f, g) and not perp(MAXIMAL, f, g):
                return _fail("related pair not ⊥₀-disjoint", rel=r.kind)
    return gen, check


def _o_gen(rng, b):
    n = rng.between(0, b.max_size)
    full = (1 << n) - 1
    a = rng.below(full + 1)
    bb = rng.below(full + 1) & ~a if rng.chance(0.8) else rng.below(full + 1)
    if rng.chance(0.2):
        bb = 0
    n2 = rng.between(0, b.max_size)
    h = gen_partial_map(rng, n2, n, _density(rng))
    return {"n": n, "e": a, "e2": bb, "h": h}


def _o_check(axiom: str):
    def check(c, impl):
        n, a, b_ = c["n"], c["e"], c["e2"]
        h = c["h"]
        o = FinObj(n)
        for rel in RELS:
            rel_ab = idem_perp(rel, n, a, b_)
            if axiom == "𝒪⊥.0" and not idem_perp(rel, n, (1 << n) - 1, 0):
                return _fail("1 and 0 unrelated", rel=rel.kind)
            if axiom == "𝒪⊥.1" and rel_ab != idem_perp(rel, n, b_, a):
                return _fail("asymmetric", rel=rel.kind)
            if axiom == "𝒪⊥.2" and idem_perp(rel, n, a, a) and a:
                return _fail("nonzero idempotent related to itself", rel=rel.kind)
            if axiom == "𝒪⊥.3" and rel_ab:
                for sub in (a & (a - 1), a & b_):
                    if not idem_perp(rel, n, sub, b_):
                        return _fail("not downward closed", rel=rel.kind)
            if axiom == "𝒪⊥.4" and rel_ab:
                ua = restriction(compose(h, rest_idem_from_mask(o, a))).mask()
                ub = restriction(compose(h, rest_idem_from_mask(o, b_))).mask()
                if not idem_perp(rel, h.dom.size, ua, ub):
                    return _fail("pullbacks along h unrelated", rel=rel.kind)
    return check


for _ax in AXIOMS:
    law(_ax, "interference", "restriction-idempotent axiom %s for ⊥₀ and ⊥δ" % _ax)(
        lambda _ax=_ax: (_o_gen, _o_check(_ax)))


@law("𝒪⊥.validate", "interference",
     "validate_interference accepts ⊥₀ and ⊥δ on every object up to the size bound")
def _o_validate():
    def gen(rng, b):
        return {"bound": rng.between(0, b.max_size)}

    def check(c, impl):
        for rel in RELS:
            rep = validate_interference(rel, c["bound"])
            if not rep.ok:
                return _fail("validation rejected the relation", rel=rel.kind,
                             axiom=rep.axiom, witness=rep.witness)
    return gen, check


# -- joins ---------------------------------------------------------------------------

def _gen_family(rng, b, max_members: int = 4):
    a, x = _obj(rng, b), _obj(rng, b)
    k = rng.between(0, max_members)
    return a, x, gen_disjoint_family(rng, a, [x] * k)


@law("⊔.1", "join", "each member lies below the join")
def _j1():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "a": a.size, "x": x.size}

    def check(c, impl):
        fam = c["fam"]
        j = join(MAXIMAL, fam, FinObj(c["a"]), FinObj(c["x"]))
        for i, f in enumerate(fam):
            if not leq(f, j):
                return _fail("member %d not below the join" % i)
    return gen, check


@law("⊔.2", "join", "the join lies below every common upper bound")
def _j2():
    def gen(rng, b):
        a, x = _obj(rng, b), _obj(rng, b)
        h = _map(rng, a, x)
        k = rng.between(0, 4)
        owner = [rng.below(k + 1) - 1 if k else -1 for _ in range(a.size)]
        fam = [gen_sub_map(rng, h.__class__._raw(a, x, tuple(
            v if owner[p] == i else -1 for p, v in enumerate(h.t))), 0.8) for i in range(k)]
        return {"fam": fam, "h": h}

    def check(c, impl):
        fam, h = c["fam"], c["h"]
        if not all(leq(f, h) for f in fam):
            return None
        if not leq(join(MAXIMAL, fam, h.dom, h.cod), h):
            return _fail("join not below an upper bound")
    return gen, check


@law("⊔.3", "join", "h (⊔ fᵢ) = ⊔ h fᵢ")
def _j3():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "h": _map(rng, _obj(rng, b), a), "x": x.size}

    def check(c, impl):
        fam, h = c["fam"], c["h"]
        x = FinObj(c["x"])
        lhs = compose(h, join(MAXIMAL, fam, h.cod, x))
        rhs = join(MAXIMAL, [compose(h, f) for f in fam], h.dom, x)
        if lhs != rhs:
            return _fail("pre-composition does not distribute", lhs=lhs, rhs=rhs)
    return gen, check


@law("⊔.4", "join", "joins are strong: members ⊥ h implies join ⊥ h (⊥₀ and ⊥δ)")
def _j4():
    def gen(rng, b):
        a, x = _obj(rng, b), _obj(rng, b)
        k = rng.between(0, 4)
        y = _obj(rng, b)
        parts = gen_disjoint_family(rng, a, [x] * k + [y])
        fam, h = parts[:k], parts[k]
        if rng.chance(0.3):
            # a family with at most one nonzero member, as ⊥δ needs
            fam = [f if i == 0 else zero(a, x) for i, f in enumerate(fam)]
        return {"fam": fam, "h": h, "x": x.size}

    def check(c, impl):
        fam, h = c["fam"], c["h"]
        x = FinObj(c["x"])
        for rel in RELS:
            if not all(perp(rel, f, g) for f, g in itertools.combinations(fam, 2)):
                continue
            if all(perp(rel, f, h) for f in fam):
                if not perp(rel, join(rel, fam, h.dom, x), h):
                    return _fail("join not disjoint from h", rel=rel.kind)
    return gen, check


@law("⊔.member-restriction", "join", "f̄ⱼ (⊔ fᵢ) = fⱼ")
def _jl1():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "a": a.size, "x": x.size}

    def check(c, impl):
        fam = c["fam"]
        j = join(MAXIMAL, fam, FinObj(c["a"]), FinObj(c["x"]))
        for i, f in enumerate(fam):
            if compose(restriction(f), j) != f:
                return _fail("member %d not recovered" % i)
    return gen, check


@law("⊔.restriction", "join", "restriction of ⊔ fᵢ is ⊔ f̄ᵢ")
def _jl2():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "a": a.size, "x": x.size}

    def check(c, impl):
        fam = c["fam"]
        a, x = FinObj(c["a"]), FinObj(c["x"])
        lhs = restriction(join(MAXIMAL, fam, a, x))
        rhs = join(MAXIMAL, [restriction(f) for f in fam], a, a)
        if lhs != rhs:
            return _fail("restriction does not distribute")
    return gen, check


@law("⊔.composition", "join", "k (⊔ fᵢ) k′ = ⊔ k fᵢ k′")
def _jl3():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "k": _map(rng, _obj(rng, b), a), "k2": _map(rng, x, _obj(rng, b)),
                "x": x.size}

    def check(c, impl):
        fam, k, k2 = c["fam"], c["k"], c["k2"]
        lhs = compose_all(k, join(MAXIMAL, fam, k.cod, FinObj(c["x"])), k2)
        rhs = join(MAXIMAL, [compose_all(k, f, k2) for f in fam], k.dom, k2.cod)
        if lhs != rhs:
            return _fail("composition does not distribute")
    return gen, check


@law("⊔.member-perp", "join", "⊔ fᵢ ⊥ h implies fⱼ ⊥ h")
def _jl4():
    def gen(rng, b):
        a, x, fam = _gen_family(rng, b)
        return {"fam": fam, "h": _map(rng, a, _obj(rng, b)), "x": x.size}

    def check(c, impl):
        fam, h = c["fam"], c["h"]
        if perp(MAXIMAL, join(MAXIMAL, fam, h.dom, FinObj(c["x"])), h):
            for i, f in enumerate(fam):
                if not perp(MAXIMAL, f, h):
                    return _fail("member %d not disjoint from h" % i)
    return gen, check
