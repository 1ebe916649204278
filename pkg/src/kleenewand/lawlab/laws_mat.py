"""Laws of the matrix construction: restriction structure, decisions, separation."""

from __future__ import annotations

import itertools

from ..finpar import compose, restriction
from ..interference import MAXIMAL, perp
from ..matext import (
    MatObj,
    Matrix,
    codiagonal,
    decision_equations,
    decision_inverse,
    decision_of,
    decision_self_equations,
    direct_sum,
    flatten,
    injection,
    is_decision,
    is_restriction_iso,
    mat_compose,
    mat_identity,
    mat_join,
    mat_restriction,
    mat_zero,
    perp_d,
    quasi_projection,
    restriction_inverse,
    separating_decision,
    separating_decision_n,
    symmetry,
    unflatten,
    vstack,
)
from ._common import density, fail
from .gen import gen_disjoint_family, gen_matobj, gen_matrix
from .registry import Bounds, law

MAT_BOUNDS = Bounds(max_size=4, max_parts=3)


def _mobj(rng, b: Bounds, min_parts: int = 0) -> MatObj:
    return gen_matobj(rng, min_parts, b.max_parts, b.max_size)


def _mat(rng, dom: MatObj, cod: MatObj) -> Matrix:
    return gen_matrix(rng, dom, cod, density(rng))


def _disjoint_mats(rng, dom: MatObj, cods: list[MatObj]) -> list[Matrix]:
    """Matrices out of ``dom`` whose flat supports are pairwise disjoint."""
    flat = gen_disjoint_family(rng, dom.total(), [c.total() for c in cods])
    return [unflatten(f, dom, c) for f, c in zip(flat, cods)]


def _gen_one(rng, b):
    return {"f": _mat(rng, _mobj(rng, b), _mobj(rng, b))}


def _gen_span(rng, b):
    a = _mobj(rng, b)
    return {"f": _mat(rng, a, _mobj(rng, b)), "g": _mat(rng, a, _mobj(rng, b))}


def _gen_chain(rng, b):
    a, x = _mobj(rng, b), _mobj(rng, b)
    return {"f": _mat(rng, a, x), "g": _mat(rng, x, _mobj(rng, b))}


def _gen_blocks(rng, b):
    """A matrix with nonempty codomain list and a random cut of it into blocks."""
    f = _mat(rng, _mobj(rng, b), _mobj(rng, b, 1))
    m = len(f.cod)
    k = rng.between(1, m)
    cuts = sorted(rng.shuffle(list(range(1, m)))[:k - 1])
    edges = [0] + cuts + [m]
    return {"f": f, "blocks": [edges[i + 1] - edges[i] for i in range(k)]}


# -- restriction structure ------------------------------------------------------------

@law("MAT.R.1", "mat", "F̄ F = F for matrices", MAT_BOUNDS)
def _r1():
    def check(c, impl):
        f = c["f"]
        if mat_compose(mat_restriction(f), f) != f:
            return fail("F̄ F ≠ F")
    return _gen_one, check


@law("MAT.R.2", "mat", "F̄ Ḡ = Ḡ F̄ for matrices", MAT_BOUNDS)
def _r2():
    def check(c, impl):
        fb, gb = mat_restriction(c["f"]), mat_restriction(c["g"])
        if mat_compose(fb, gb) != mat_compose(gb, fb):
            return fail("F̄ Ḡ ≠ Ḡ F̄")
    return _gen_span, check


@law("MAT.R.3", "mat", "restriction of Ḡ F equals Ḡ F̄ for matrices", MAT_BOUNDS)
def _r3():
    def check(c, impl):
        f, g = c["f"], c["g"]
        gb = mat_restriction(g)
        if mat_restriction(mat_compose(gb, f)) != mat_compose(gb, mat_restriction(f)):
            return fail("restriction(Ḡ F) ≠ Ḡ F̄")
    return _gen_span, check


@law("MAT.R.4", "mat", "F Ḡ = (restriction of F G) F for matrices", MAT_BOUNDS)
def _r4():
    def check(c, impl):
        f, g = c["f"], c["g"]
        if mat_compose(f, mat_restriction(g)) != mat_compose(mat_restriction(mat_compose(f, g)),
                                                             f):
            return fail("F Ḡ ≠ restriction(F G) F")
    return _gen_chain, check


@law("MAT.flat", "mat",
     "flattening is faithful and preserves composition and restriction", MAT_BOUNDS)
def _flat():
    def check(c, impl):
        f, g = c["f"], c["g"]
        if unflatten(flatten(f), f.dom, f.cod) != f:
            return fail("unflatten ∘ flatten is not the identity")
        if flatten(mat_compose(f, g)) != compose(flatten(f), flatten(g)):
            return fail("composition not preserved")
        if flatten(mat_restriction(f)) != restriction(flatten(f)):
            return fail("restriction not preserved")
    return _gen_chain, check


@law("MAT.row-disjoint", "mat",
     "composition, restriction, join and decisions produce row-disjoint matrices", MAT_BOUNDS)
def _rows():
    def gen(rng, b):
        a, x = _mobj(rng, b), _mobj(rng, b, 1)
        f, f2 = _disjoint_mats(rng, a, [x, x])
        return {"f": f, "f2": f2, "g": _mat(rng, x, _mobj(rng, b))}

    def check(c, impl):
        f, f2, g = c["f"], c["f2"], c["g"]
        outs = [mat_compose(f, g), mat_restriction(f), mat_join(f, f2),
                decision_of(f, [len(f.cod)])]
        for m in outs:
            Matrix(m.dom, m.cod, m.entries)  # the constructor rejects overlapping rows
    return gen, check


@law("MAT.injections", "mat",
     "ιⱼ ι°ⱼ = 1, ιᵢ ι°ⱼ = 0 for i ≠ j, ιⱼ ∇ = 1 and σ σ = 1", MAT_BOUNDS)
def _inj():
    def gen(rng, b):
        k = rng.between(1, 3)
        return {"objs": [_mobj(rng, Bounds(max_size=b.max_size, max_parts=2))
                         for _ in range(k)]}

    def check(c, impl):
        objs = c["objs"]
        for i, j in itertools.product(range(len(objs)), repeat=2):
            p = mat_compose(injection(objs, i), quasi_projection(objs, j))
            want = mat_identity(objs[i]) if i == j else mat_zero(objs[i], objs[j])
            if p != want:
                return fail("ι%d ι°%d is wrong" % (i + 1, j + 1))
        a = objs[0]
        copies = [a] * len(objs)
        for j in range(len(objs)):
            if mat_compose(injection(copies, j), codiagonal(a, len(objs))) != mat_identity(a):
                return fail("ι%d ∇ ≠ 1" % (j + 1))
        b_ = objs[-1]
        if mat_compose(symmetry(a, b_), symmetry(b_, a)) != mat_identity(a + b_):
            return fail("σ σ ≠ 1")
    return gen, check


# -- decisions ------------------------------------------------------------------------

def _eq_check(eqs: dict) -> str | None:
    for name, (lhs, rhs) in eqs.items():
        if lhs != rhs:
            return fail("%s fails" % name, lhs=lhs, rhs=rhs)
    return None


@law("D.1", "mat", "F̄ = ⟨F⟩ ∇", MAT_BOUNDS)
def _big_d1():
    def check(c, impl):
        return _eq_check({"D.1": decision_equations(c["f"], c["blocks"])["D.1"]})
    return _gen_blocks, check


@law("D.2", "mat", "⟨F⟩ (F + … + F) = F (ι₁ + … + ιₖ)", MAT_BOUNDS)
def _big_d2():
    def check(c, impl):
        return _eq_check({"D.2": decision_equations(c["f"], c["blocks"])["D.2"]})
    return _gen_blocks, check


@law("d.1", "mat", "a decision d satisfies d̄ = d ∇", MAT_BOUNDS)
def _small_d1():
    def check(c, impl):
        k = len(c["blocks"])
        d = decision_of(c["f"], c["blocks"])
        return _eq_check({"d.1": decision_self_equations(d, k)["d.1"]})
    return _gen_blocks, check


@law("d.2", "mat", "a decision d satisfies d (d + … + d) = d (ι₁ + … + ιₙ)", MAT_BOUNDS)
def _small_d2():
    def check(c, impl):
        k = len(c["blocks"])
        d = decision_of(c["f"], c["blocks"])
        return _eq_check({"d.2": decision_self_equations(d, k)["d.2"]})
    return _gen_blocks, check


@law("dec.idempotent", "mat", "⟨⟨F⟩⟩ = ⟨F⟩", MAT_BOUNDS)
def _dec_idem():
    def check(c, impl):
        k = len(c["blocks"])
        d = decision_of(c["f"], c["blocks"])
        if not is_decision(d, k):
            return fail("⟨F⟩ is not its own decision")
    return _gen_blocks, check


@law("dec.inverse", "mat",
     "d° = [d ι°₁; …; d ι°ₙ] is the restriction inverse of a decision: d d° = d̄, d° d = d°̄",
     MAT_BOUNDS)
def _dec_inverse():
    def check(c, impl):
        k = len(c["blocks"])
        d = decision_of(c["f"], c["blocks"])
        inv = decision_inverse(d, k)
        if mat_compose(d, inv) != mat_restriction(d):
            return fail("d d° ≠ d̄")
        if mat_compose(inv, d) != mat_restriction(inv):
            return fail("d° d ≠ restriction of d°")
        if not is_restriction_iso(d) or restriction_inverse(d) != inv:
            return fail("d° differs from the partial inverse of the flat map")
    return _gen_blocks, check


def _gen_sep_pair(rng, b):
    a = _mobj(rng, b)
    x, y = _mobj(rng, b), _mobj(rng, b)
    if rng.chance(0.7):
        f, g = _disjoint_mats(rng, a, [x, y])
    else:
        f, g = _mat(rng, a, x), _mat(rng, a, y)
    return {"f": f, "g": g}


@law("dec.separation-iso", "mat",
     "F ⊥d G iff [F̄; Ḡ] is a restriction isomorphism, whose inverse is ⟨F | G⟩, "
     "and ⟨F | G⟩ ι°₁ = F̄, ⟨F | G⟩ ι°₂ = Ḡ", MAT_BOUNDS)
def _sep_iso():
    def check(c, impl):
        f, g = c["f"], c["g"]
        fb, gb = mat_restriction(f), mat_restriction(g)
        copair = vstack(fb, gb)
        iso = is_restriction_iso(copair)
        if iso != perp_d(f, g):
            return fail("separation and invertibility disagree", perp_d=perp_d(f, g), iso=iso)
        if not iso:
            return None
        sep = separating_decision(f, g)
        if restriction_inverse(copair) != sep:
            return fail("⟨F | G⟩ is not the inverse of [F̄; Ḡ]")
        a = f.dom
        if mat_compose(sep, quasi_projection([a, a], 0)) != fb or \
                mat_compose(sep, quasi_projection([a, a], 1)) != gb:
            return fail("⟨F | G⟩ ι° equations fail")
        if not is_decision(sep, 2):
            return fail("⟨F | G⟩ is not a decision")
    return _gen_sep_pair, check


@law("dec.nary-separation", "mat",
     "a family has a separating decision iff it is pairwise ⊥d", MAT_BOUNDS)
def _nary():
    def gen(rng, b):
        a = _mobj(rng, b)
        k = rng.between(1, 3)
        cods = [_mobj(rng, b) for _ in range(k)]
        fs = _disjoint_mats(rng, a, cods)
        if rng.chance(0.3):
            i = rng.below(k)
            fs[i] = _mat(rng, a, cods[i])
        return {"fs": fs}

    def check(c, impl):
        fs = c["fs"]
        pairwise = all(perp_d(f, g) for f, g in itertools.combinations(fs, 2))
        copair = vstack(*[mat_restriction(f) for f in fs])
        if is_restriction_iso(copair) != pairwise:
            return fail("n-ary separation and pairwise ⊥d disagree")
        if pairwise:
            sep = separating_decision_n(fs)
            if restriction_inverse(copair) != sep:
                return fail("⟨F₁ | … | Fₙ⟩ is not the inverse of the copairing")
            copies = [fs[0].dom] * len(fs)
            for j, f in enumerate(fs):
                if mat_compose(sep, quasi_projection(copies, j)) != mat_restriction(f):
                    return fail("⟨…⟩ ι°%d ≠ F̄%d" % (j + 1, j + 1))
    return gen, check


@law("dec.unit", "mat", "⟨1_A | 0⟩ = ι₁", MAT_BOUNDS)
def _unit():
    def gen(rng, b):
        return {"a": _mobj(rng, b), "b": _mobj(rng, b)}

    def check(c, impl):
        a, b_ = c["a"], c["b"]
        if separating_decision(mat_identity(a), mat_zero(a, b_)) != injection([a, a], 0):
            return fail("⟨1 | 0⟩ ≠ ι₁")
    return gen, check


# -- disjointness and joins --------------------------------------------------------------

@law("MAT.perp-entrywise", "mat",
     "F ⊥d G iff every F(i,j) is ⊥₀-disjoint from every G(i,k)", MAT_BOUNDS)
def _entrywise():
    def check(c, impl):
        f, g = c["f"], c["g"]
        entrywise = all(perp(MAXIMAL, fe, ge)
                        for fr, gr in zip(f.entries, g.entries) for fe in fr for ge in gr)
        flat = flatten(f).mask() & flatten(g).mask() == 0
        if not perp_d(f, g) == entrywise == flat:
            return fail("⊥d, entrywise ⊥₀ and flat disjointness disagree")
    return _gen_sep_pair, check


@law("MAT.join-composite", "mat", "F ⊔ G = ⟨F | G⟩ (F + G) ∇", MAT_BOUNDS)
def _join_composite():
    def gen(rng, b):
        a, x = _mobj(rng, b), _mobj(rng, b)
        f, g = _disjoint_mats(rng, a, [x, x])
        return {"f": f, "g": g}

    def check(c, impl):
        f, g = c["f"], c["g"]
        lhs = mat_join(f, g)
        rhs = mat_compose(mat_compose(separating_decision(f, g), direct_sum(f, g)),
                          codiagonal(f.cod, 2))
        if lhs != rhs:
            return fail("entrywise join differs from the composite", lhs=lhs, rhs=rhs)
        if mat_join(f, mat_zero(f.dom, f.cod)) != f:
            return fail("F ⊔ 0 ≠ F")
    return gen, check


