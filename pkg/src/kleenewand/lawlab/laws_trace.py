"""Trace and iteration laws on matrices, and the correspondences between them.

Every trace or iteration here is evaluated with ``impl.mat_wand``, so a
mutated wand flows through all four trace forms: the block form, the
one-part-at-a-time form, the copairing form built from iteration, and the
feedback form that iterates the whole input.
"""

from __future__ import annotations

import itertools
from dataclasses import replace

from ..finpar import FinObj, PartialMap
from ..matext import (
    MatObj,
    Matrix,
    block,
    direct_sum,
    flatten,
    hstack,
    mat_compose,
    mat_identity,
    mat_join,
    unflatten,
    vstack,
)
from ..trace import (
    closed_form_trace,
    iter_blocks,
    iter_from_trace,
    iterate,
    sigma,
    swap_traced,
    trace2,
    trace_feedback,
    trace_from_iter,
    trace_n,
    wand_from_iter,
)
from ._common import density, fail
from .enumeration import all_maps, enumerate_all
from .gen import (
    gen_disjoint_family,
    gen_disjoint_pair,
    gen_matrix,
    gen_surjection,
    gen_uniform_square,
)
from .oracle import token_trace
from .registry import REGISTRY, Bounds, law

TRACE_BOUNDS = Bounds(max_size=4, max_parts=3)
UNDEF = -1


def _parts(rng, b: Bounds, lo: int, hi: int) -> MatObj:
    n = rng.between(lo, hi)
    return MatObj([rng.between(0, b.max_size) for _ in range(n)])


def _x(rng, b: Bounds) -> MatObj:
    return _parts(rng, b, 0, 2)


def _ab(rng, b: Bounds) -> MatObj:
    return _parts(rng, b, 0, 2)


def _mat(rng, dom: MatObj, cod: MatObj) -> Matrix:
    return gen_matrix(rng, dom, cod, density(rng))


def _gen_traced(rng, b):
    x, a, bo = _x(rng, b), _ab(rng, b), _ab(rng, b)
    return {"g": _mat(rng, x + a, x + bo), "x": len(x)}


def _forms(impl):
    w = impl.mat_wand
    return {
        "block": lambda g, x: trace2(g, x, w),
        "stepwise": lambda g, x: trace_n(g, x, w),
        "copairing": lambda g, x: trace_from_iter(g, x, w),
        "feedback": lambda g, x: trace_feedback(g, x, w),
    }


def _compare(name: str, lhs: Matrix, rhs: Matrix) -> str | None:
    if lhs != rhs:
        return fail(name, lhs=flatten(lhs).table, rhs=flatten(rhs).table)
    return None


# -- trace axioms -------------------------------------------------------------------

@law("Trace.Tightening", "trace", "Tr((1 + g) G (1 + h)) = g Tr(G) h", TRACE_BOUNDS)
def _tightening():
    def gen(rng, b):
        c = _gen_traced(rng, b)
        g = c["g"]
        x = c["x"]
        a, bo = g.dom.slice(x, len(g.dom)), g.cod.slice(x, len(g.cod))
        c["pre"] = _mat(rng, _ab(rng, b), a)
        c["post"] = _mat(rng, bo, _ab(rng, b))
        return c

    def check(c, impl):
        g, x, pre, post = c["g"], c["x"], c["pre"], c["post"]
        xs = g.dom.slice(0, x)
        tr = _forms(impl)["block"]
        wide = mat_compose(mat_compose(direct_sum(mat_identity(xs), pre), g),
                           direct_sum(mat_identity(xs), post))
        return _compare("Tr((1+g) G (1+h)) ≠ g Tr(G) h", tr(wide, x),
                        mat_compose(mat_compose(pre, tr(g, x)), post))
    return gen, check


@law("Trace.Sliding", "trace", "Tr^X(F (k + 1)) = Tr^X′((k + 1) F) for k: X′ → X",
     TRACE_BOUNDS)
def _sliding():
    def gen(rng, b):
        x, x2, a, bo = _x(rng, b), _x(rng, b), _ab(rng, b), _ab(rng, b)
        return {"f": _mat(rng, x + a, x2 + bo), "k": _mat(rng, x2, x), "x": len(x)}

    def check(c, impl):
        f, k, x = c["f"], c["k"], c["x"]
        x2 = k.dom
        a, bo = f.dom.slice(x, len(f.dom)), f.cod.slice(len(x2), len(f.cod))
        tr = _forms(impl)["block"]
        lhs = tr(mat_compose(f, direct_sum(k, mat_identity(bo))), x)
        rhs = tr(mat_compose(direct_sum(k, mat_identity(a)), f), len(x2))
        return _compare("sliding fails", lhs, rhs)
    return gen, check


@law("Trace.Vanishing", "trace",
     "Tr^(X+Y) = Tr^X ∘ Tr^Y = Tr^Y ∘ Tr^X, traced in one block or part by part; Tr^0 = 1",
     TRACE_BOUNDS)
def _vanishing():
    def gen(rng, b):
        x, y, a, bo = _x(rng, b), _x(rng, b), _ab(rng, b), _ab(rng, b)
        return {"g": _mat(rng, x + y + a, x + y + bo), "x": len(x), "y": len(y)}

    def check(c, impl):
        g, x, y = c["g"], c["x"], c["y"]
        tr = _forms(impl)["block"]
        whole = tr(g, x + y)
        routes = {
            "X then Y": tr(tr(g, x), y),
            "Y then X": tr(tr(swap_traced(g, x, y), y), x),
            "part by part": _forms(impl)["stepwise"](g, x + y),
        }
        for name, m in routes.items():
            out = _compare("Tr^(X+Y) differs from %s" % name, whole, m)
            if out:
                return out
        if tr(g, 0) != g or trace_n(g, 0, impl.mat_wand) != g:
            return fail("tracing nothing changed the matrix")
    return gen, check


@law("Trace.Superposing", "trace", "Tr^X(G + h) = Tr^X(G) + h", TRACE_BOUNDS)
def _superposing():
    def gen(rng, b):
        c = _gen_traced(rng, b)
        c["h"] = _mat(rng, _ab(rng, b), _ab(rng, b))
        return c

    def check(c, impl):
        g, x, h = c["g"], c["x"], c["h"]
        tr = _forms(impl)["block"]
        return _compare("superposing fails", tr(direct_sum(g, h), x),
                        direct_sum(tr(g, x), h))
    return gen, check


def _exh_objects(b: Bounds):
    for n in range(3):
        for sizes in itertools.product(range(b.max_size + 1), repeat=n):
            yield {"xobj": MatObj(sizes)}


@law("Trace.Yanking", "trace", "Tr^X(σ) = 1 in every trace form", TRACE_BOUNDS,
     _exh_objects, Bounds(max_size=3))
def _yanking():
    def gen(rng, b):
        return {"xobj": _parts(rng, b, 0, 3)}

    def check(c, impl):
        xo = c["xobj"]
        s = sigma(xo)
        for name, tr in _forms(impl).items():
            out = _compare("%s form: Tr(σ) ≠ 1" % name, tr(s, len(xo)), mat_identity(xo))
            if out:
                return out
    return gen, check


def _cover(rng, base: MatObj) -> MatObj:
    """An object list at least as large as ``base``, so a surjection onto ``base`` exists."""
    return MatObj([p.size + rng.between(0, 1) for p in base.parts])


def _pull_square(rng, u: PartialMap, v: PartialMap, g2: PartialMap) -> PartialMap:
    """A flat ``G`` with ``G v = u G′`` for surjective ``v``."""
    pre: dict[int, list[int]] = {}
    for q, y in enumerate(v.t):
        if y >= 0:
            pre.setdefault(y, []).append(q)
    outside = [q for q, y in enumerate(v.t) if y < 0]
    t = []
    for p in range(u.dom.size):
        y = u.t[p]
        target = g2.t[y] if y >= 0 else UNDEF
        if target >= 0:
            t.append(rng.choice(pre[target]))
        elif outside and rng.chance(0.5):
            t.append(rng.choice(outside))
        else:
            t.append(UNDEF)
    return PartialMap._raw(u.dom, v.dom, tuple(t))


@law("Trace.Uniform", "trace", "G (h + 1) = (h + 1) G′ implies Tr(G) = Tr(G′)", TRACE_BOUNDS)
def _trace_uniform():
    def gen(rng, b):
        x2, a, bo = _x(rng, b), _ab(rng, b), _ab(rng, b)
        x = _cover(rng, x2)
        h = unflatten(gen_surjection(rng, x.total(), x2.total()), x, x2)
        g2 = _mat(rng, x2 + a, x2 + bo)
        u = flatten(direct_sum(h, mat_identity(a)))
        v = flatten(direct_sum(h, mat_identity(bo)))
        g = unflatten(_pull_square(rng, u, v, flatten(g2)), x + a, x + bo)
        return {"g": g, "g2": g2, "h": h}

    def check(c, impl):
        g, g2, h = c["g"], c["g2"], c["h"]
        x = len(h.dom)
        a = g.dom.slice(x, len(g.dom))
        bo = g.cod.slice(x, len(g.cod))
        if mat_compose(g, direct_sum(h, mat_identity(bo))) != \
                mat_compose(direct_sum(h, mat_identity(a)), g2):
            return None
        tr = _forms(impl)["block"]
        return _compare("Tr(G) ≠ Tr(G′)", tr(g, x), tr(g2, len(h.cod)))
    return gen, check


# -- iteration axioms --------------------------------------------------------------------

def _gen_iter(rng, b):
    x, a = _parts(rng, b, 0, 2), _ab(rng, b)
    return {"f": _mat(rng, x, x + a), "x": len(x)}


def _it(impl, f: Matrix, x: int) -> Matrix:
    return iterate(f, x, impl.mat_wand)


@law("Iter.Iteration", "iteration", "F₂ ⊔ F₁ Iter(F) = Iter(F)", TRACE_BOUNDS)
def _iteration():
    def check(c, impl):
        f, x = c["f"], c["x"]
        f1, f2 = iter_blocks(f, x)
        it = _it(impl, f, x)
        return _compare("F₂ ⊔ F₁ Iter(F) ≠ Iter(F)", mat_join(f2, mat_compose(f1, it)), it)
    return _gen_iter, check


@law("Iter.Naturality", "iteration", "Iter([F₁ | F₂ h]) = Iter(F) h", TRACE_BOUNDS)
def _naturality():
    def gen(rng, b):
        c = _gen_iter(rng, b)
        f, x = c["f"], c["x"]
        c["h"] = _mat(rng, f.cod.slice(x, len(f.cod)), _ab(rng, b))
        return c

    def check(c, impl):
        f, x, h = c["f"], c["x"], c["h"]
        f1, f2 = iter_blocks(f, x)
        lhs = _it(impl, hstack(f1, mat_compose(f2, h)), x)
        return _compare("naturality fails", lhs, mat_compose(_it(impl, f, x), h))
    return gen, check


@law("Iter.Dinaturality", "iteration",
     "Iter([k F₁ | k F₂]) = k Iter([F₁ k | F₂]) for k: X → X′, F: X′ → X + A", TRACE_BOUNDS)
def _dinaturality():
    def gen(rng, b):
        x, x2, a = _x(rng, b), _x(rng, b), _ab(rng, b)
        return {"f": _mat(rng, x2, x + a), "k": _mat(rng, x, x2)}

    def check(c, impl):
        f, k = c["f"], c["k"]
        x, x2 = len(k.dom), len(k.cod)
        f1, f2 = _split_cols(f, x)
        lhs = _it(impl, hstack(mat_compose(k, f1), mat_compose(k, f2)), x)
        rhs = mat_compose(k, _it(impl, hstack(mat_compose(f1, k), f2), x2))
        return _compare("dinaturality fails", lhs, rhs)
    return gen, check


def _split_cols(f: Matrix, x: int) -> tuple[Matrix, Matrix]:
    return block(f, (0, len(f.dom)), (0, x)), block(f, (0, len(f.dom)), (x, len(f.cod)))


@law("Iter.Diagonal", "iteration",
     "Iter([F₁ ⊔ F₂ | F₃]) = Iter([Iter([F₁ | F₂]) | Iter([F₁ | F₃])])", TRACE_BOUNDS)
def _diagonal():
    def gen(rng, b):
        x, a = _parts(rng, b, 0, 2), _ab(rng, b)
        flat = gen_disjoint_family(rng, x.total(), [x.total(), x.total(), a.total()])
        f1, f2 = unflatten(flat[0], x, x), unflatten(flat[1], x, x)
        return {"f1": f1, "f2": f2, "f3": unflatten(flat[2], x, a)}

    def check(c, impl):
        f1, f2, f3 = c["f1"], c["f2"], c["f3"]
        x = len(f1.dom)
        inner12 = _it(impl, hstack(f1, f2), x)
        inner13 = _it(impl, hstack(f1, f3), x)
        lhs = _it(impl, hstack(mat_join(f1, f2), f3), x)
        rhs = _it(impl, hstack(inner12, inner13), x)
        return _compare("diagonal property fails", lhs, rhs)
    return gen, check


@law("Iter.Uniform", "iteration",
     "h F₁′ = F₁ h and F₂ = h F₂′ imply Iter(F) = h Iter(F′)", TRACE_BOUNDS)
def _iter_uniform():
    def gen(rng, b):
        x2, a = _x(rng, b), _ab(rng, b)
        x = _cover(rng, x2)
        hf = gen_surjection(rng, x.total(), x2.total())
        f1p, f2p = gen_disjoint_pair(rng, x2.total(), a.total())
        f1, f2 = gen_uniform_square(rng, hf, f1p, f2p, "uniform")
        return {"f": hstack(unflatten(f1, x, x), unflatten(f2, x, a)),
                "f2": hstack(unflatten(f1p, x2, x2), unflatten(f2p, x2, a)),
                "h": unflatten(hf, x, x2)}

    def check(c, impl):
        f, fp, h = c["f"], c["f2"], c["h"]
        x, x2 = len(h.dom), len(h.cod)
        f1, f2 = iter_blocks(f, x)
        f1p, f2p = iter_blocks(fp, x2)
        if mat_compose(h, f1p) != mat_compose(f1, h) or f2 != mat_compose(h, f2p):
            return None
        return _compare("Iter(F) ≠ h Iter(F′)", _it(impl, f, x),
                        mat_compose(h, _it(impl, fp, x2)))
    return gen, check


# -- correspondences ----------------------------------------------------------------------

@law("Trace.roundtrip-wand", "trace",
     "wand → iteration → wand, and wand → trace → iteration → wand, return the wand",
     TRACE_BOUNDS)
def _rt_wand():
    def gen(rng, b):
        x = FinObj(rng.between(0, b.max_size + 2))
        f, g = gen_disjoint_pair(rng, x, FinObj(rng.between(0, 3)))
        return {"f": f, "g": g}

    def check(c, impl):
        f, g = c["f"], c["g"]
        w = impl.wand(f, g)
        via_iter = wand_from_iter(f, g, lambda m, x: iterate(m, x, impl.mat_wand))
        via_trace = wand_from_iter(f, g, lambda m, x: iter_from_trace(m, x, impl.mat_wand))
        if via_iter != w:
            return fail("wand → iteration → wand changed the wand", wand=w, back=via_iter)
        if via_trace != w:
            return fail("wand → trace → iteration → wand changed the wand", wand=w,
                        back=via_trace)
    return gen, check


@law("Trace.roundtrip-iter", "trace",
     "iteration → trace (copairing form) → iteration returns the iteration", TRACE_BOUNDS)
def _rt_iter():
    def check(c, impl):
        f, x = c["f"], c["x"]
        it = _it(impl, f, x)
        back = trace_from_iter(vstack(f, f), x, impl.mat_wand)
        return _compare("iteration → trace → iteration changed the iteration", back, it)
    return _gen_iter, check


def _exh_traced(b: Bounds):
    """Every matrix on small shapes: short part lists, total domain at most 4 points."""
    lists = [MatObj(s) for s in ([], [0], [1], [2], [1, 1])]
    for x, a, bo in itertools.product(lists, lists, lists):
        if x.total() > b.max_size or a.total() > b.max_size or bo.total() > b.max_size:
            continue
        dom, cod = x + a, x + bo
        if dom.total() > 4 or len(dom) > 3 or len(cod) > 3:
            continue
        for p in all_maps(dom.total(), cod.total()):
            yield {"g": unflatten(p, dom, cod), "x": len(x)}


@law("Trace.closed-form", "trace", "Tr(G) = G₄ ⊔ ⊔ₙ G₃ G₁ⁿ G₂ with n up to |X|", TRACE_BOUNDS,
     _exh_traced, Bounds(max_size=2))
def _closed_form():
    def check(c, impl):
        g, x = c["g"], c["x"]
        return _compare("trace differs from the closed form", _forms(impl)["block"](g, x),
                        closed_form_trace(g, x))
    return _gen_traced, check


@law("Trace.copairing", "trace", "the copairing form ι₂ G [Iter(ι₁ G); 1] equals the block form",
     TRACE_BOUNDS, _exh_traced, Bounds(max_size=2))
def _copairing():
    def check(c, impl):
        g, x = c["g"], c["x"]
        forms = _forms(impl)
        return _compare("copairing form differs", forms["copairing"](g, x),
                        forms["block"](g, x))
    return _gen_traced, check


@law("Trace.feedback", "trace", "the feedback form ι₂ Iter(G (ι₁ + 1)) equals the block form",
     TRACE_BOUNDS, _exh_traced, Bounds(max_size=2))
def _feedback():
    def check(c, impl):
        g, x = c["g"], c["x"]
        forms = _forms(impl)
        return _compare("feedback form differs", forms["feedback"](g, x), forms["block"](g, x))
    return _gen_traced, check


@law("Trace.oracle", "trace", "the trace agrees with following a token through G",
     TRACE_BOUNDS, _exh_traced, Bounds(max_size=2))
def _oracle():
    def check(c, impl):
        g, x = c["g"], c["x"]
        tr = flatten(_forms(impl)["block"](g, x))
        xs = g.dom.slice(0, x).total()
        flat = flatten(g)
        for p in range(tr.dom.size):
            want = token_trace(flat, xs, p)
            if tr.table[p] != want:
                return fail("disagreement at input %d" % p, trace=tr.table[p], oracle=want)
    return _gen_traced, check


# -- exhaustive sweeps on tiny shapes --------------------------------------------------------

_SMALL_LISTS = [MatObj(s) for s in ([], [1], [2], [1, 1])]
_UNIT_LISTS = [MatObj(s) for s in ([], [1])]
_EXH = Bounds(max_size=3, max_parts=2)


def _all_mats(dom: MatObj, cod: MatObj):
    for p in all_maps(dom.total(), cod.total()):
        yield unflatten(p, dom, cod)


def _exh_tightening(b: Bounds):
    for x, a, bo, a2, b2 in itertools.product(_SMALL_LISTS, _UNIT_LISTS, _UNIT_LISTS,
                                              _UNIT_LISTS, _UNIT_LISTS):
        if (x + a).total() > 3:
            continue
        pres = list(_all_mats(a2, a))
        posts = list(_all_mats(bo, b2))
        for g in _all_mats(x + a, x + bo):
            for pre, post in itertools.product(pres, posts):
                yield {"g": g, "x": len(x), "pre": pre, "post": post}


def _exh_sliding(b: Bounds):
    for x, x2, a, bo in itertools.product(_SMALL_LISTS, _SMALL_LISTS, _UNIT_LISTS, _UNIT_LISTS):
        if (x + a).total() > 3 or x2.total() > 2:
            continue
        ks = list(_all_mats(x2, x))
        for f in _all_mats(x + a, x2 + bo):
            for k in ks:
                yield {"f": f, "k": k, "x": len(x)}


def _exh_vanishing(b: Bounds):
    for x, y, a, bo in itertools.product(_UNIT_LISTS, _SMALL_LISTS, _UNIT_LISTS, _UNIT_LISTS):
        if (x + y + a).total() > 4:
            continue
        for g in _all_mats(x + y + a, x + y + bo):
            yield {"g": g, "x": len(x), "y": len(y)}


def _exh_superposing(b: Bounds):
    for x, a, bo, c, d in itertools.product(_SMALL_LISTS, _UNIT_LISTS, _UNIT_LISTS,
                                            _UNIT_LISTS, _UNIT_LISTS):
        if (x + a).total() > 3:
            continue
        hs = list(_all_mats(c, d))
        for g in _all_mats(x + a, x + bo):
            for h in hs:
                yield {"g": g, "x": len(x), "h": h}


def _exh_iter(b: Bounds):
    for x, a in itertools.product(_SMALL_LISTS + [MatObj([3])], _SMALL_LISTS):
        if x.total() + a.total() > 5:
            continue
        for f in _all_mats(x, x + a):
            yield {"f": f, "x": len(x)}


def _exh_naturality(b: Bounds):
    for x, a, bo in itertools.product(_SMALL_LISTS, _UNIT_LISTS, _SMALL_LISTS):
        hs = list(_all_mats(a, bo))
        for f in _all_mats(x, x + a):
            for h in hs:
                yield {"f": f, "x": len(x), "h": h}


def _exh_dinaturality(b: Bounds):
    for x, x2, a in itertools.product(_SMALL_LISTS, _SMALL_LISTS, _UNIT_LISTS):
        if x.total() + x2.total() > 3:
            continue
        ks = list(_all_mats(x, x2))
        for f in _all_mats(x2, x + a):
            for k in ks:
                yield {"f": f, "k": k}


def _exh_diagonal(b: Bounds):
    for x, a in itertools.product(_SMALL_LISTS, _SMALL_LISTS):
        n, m = x.total(), a.total()
        if n > 2:
            continue
        o, ao = FinObj(n), FinObj(m)
        choices = ([(UNDEF, UNDEF, UNDEF)] + [(y, UNDEF, UNDEF) for y in range(n)]
                   + [(UNDEF, y, UNDEF) for y in range(n)] + [(UNDEF, UNDEF, y) for y in range(m)])
        for pick in itertools.product(choices, repeat=n):
            f1 = PartialMap._raw(o, o, tuple(p[0] for p in pick))
            f2 = PartialMap._raw(o, o, tuple(p[1] for p in pick))
            f3 = PartialMap._raw(o, ao, tuple(p[2] for p in pick))
            yield {"f1": unflatten(f1, x, x), "f2": unflatten(f2, x, x),
                   "f3": unflatten(f3, x, a)}


def _exh_wand_pairs(b: Bounds):
    for x in range(4):
        for a in range(3):
            for f, g in enumerate_all(x, a):
                yield {"f": f, "g": g}


def _attach(law_id: str, enumerator) -> None:
    REGISTRY[law_id] = replace(REGISTRY[law_id], exhaustive=enumerator, exhaustive_bounds=_EXH)


for _id, _en in (("Trace.Tightening", _exh_tightening), ("Trace.Sliding", _exh_sliding),
                 ("Trace.Vanishing", _exh_vanishing), ("Trace.Superposing", _exh_superposing),
                 ("Iter.Iteration", _exh_iter), ("Iter.Naturality", _exh_naturality),
                 ("Iter.Dinaturality", _exh_dinaturality), ("Iter.Diagonal", _exh_diagonal),
                 ("Trace.roundtrip-iter", _exh_iter), ("Trace.roundtrip-wand", _exh_wand_pairs)):
    _attach(_id, _en)
