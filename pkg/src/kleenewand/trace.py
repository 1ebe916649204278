"""Iteration and trace operators on row-disjoint matrices, built from the wand.

Conventions. A map ``F: X → X + A`` is cut after the first ``x`` codomain
parts into blocks ``F₁: X → X`` and ``F₂: X → A``. A map
``G: X + A → X + B`` is cut after ``x`` parts on both sides into

    G = [[G₁, G₂],
         [G₃, G₄]]

The block partition is always an explicit argument.

Every operator takes an optional ``wand`` argument: a function of two
matrices ``(F₁, F₂) ↦ F₁ ⩚ F₂``. The default is :func:`mat_wand`, the
canonical wand lifted through the flat view. Passing another function (see
:func:`lift_wand`) runs the whole construction against it, which is how the
law harness checks that the laws can fail.
"""

from __future__ import annotations

from collections.abc import Callable

from .errors import PreconditionError, ShapeError
from .finpar import PartialMap
from .matext import (
    MatObj,
    Matrix,
    block,
    direct_sum,
    flatten,
    hstack,
    injection,
    mat_compose,
    mat_identity,
    mat_join,
    mat_join_all,
    matrix_from_json,
    perp_d_witness,
    single,
    split2,
    symmetry,
    unflatten,
    vstack,
)
from .wand import kleene_wand

MatWand = Callable[[Matrix, Matrix], Matrix]
BaseWand = Callable[[PartialMap, PartialMap], PartialMap]


def lift_wand(base: BaseWand) -> MatWand:
    """Turn a wand on partial maps into a wand on matrices via the flat view."""

    def lifted(f1: Matrix, f2: Matrix) -> Matrix:
        _check_iter_blocks(f1, f2)
        return unflatten(base(flatten(f1), flatten(f2)), f2.dom, f2.cod)

    lifted.__name__ = "lifted_" + getattr(base, "__name__", "wand")
    return lifted


def _check_iter_blocks(f1: Matrix, f2: Matrix) -> None:
    if f1.dom != f1.cod:
        raise ShapeError("the loop block must be an endomorphism, got %s→%s"
                         % (f1.dom.sizes(), f1.cod.sizes()), f1.dom, f1.cod)
    if f2.dom != f1.dom:
        raise ShapeError("loop and exit blocks must share a domain", f1.dom, f2.dom)
    w = perp_d_witness(f1, f2)
    if w is not None:
        raise PreconditionError("loop and exit blocks overlap in row %d (entries %d and %d)"
                                % w)


mat_wand: MatWand = lift_wand(kleene_wand)
mat_wand.__doc__ = "The canonical wand ``F₁ ⩚ F₂`` on matrices."


def _check_traced(g: Matrix, x: int) -> None:
    if x < 0 or x > len(g.dom) or x > len(g.cod):
        raise ShapeError("cannot trace %d parts of a %d×%d matrix" % (x, len(g.dom), len(g.cod)),
                         g.dom, g.cod)
    if g.dom.parts[:x] != g.cod.parts[:x]:
        raise ShapeError("traced parts differ: %s vs %s"
                         % (g.dom.slice(0, x).sizes(), g.cod.slice(0, x).sizes()),
                         g.dom, g.cod)


def _wand(wand: MatWand | None) -> MatWand:
    return mat_wand if wand is None else wand


# -- iteration ---------------------------------------------------------------

def iter_blocks(f: Matrix, x: int) -> tuple[Matrix, Matrix]:
    """``(F₁, F₂)`` for ``F: X → X + A`` with ``X`` the first ``x`` codomain parts."""
    if x > len(f.cod) or f.dom != f.cod.slice(0, x):
        raise ShapeError("an iteration input must have shape X → X + A with X the first %d "
                         "codomain parts" % x, f.dom, f.cod)
    return block(f, (0, len(f.dom)), (0, x)), block(f, (0, len(f.dom)), (x, len(f.cod)))


def iterate(f: Matrix, x: int, wand: MatWand | None = None) -> Matrix:
    """``Iter(F) = F₁ ⩚ F₂: X → A``."""
    f1, f2 = iter_blocks(f, x)
    return _wand(wand)(f1, f2)


def iter_from_trace(f: Matrix, x: int, wand: MatWand | None = None) -> Matrix:
    """``Tr^X(∇F)``: iteration recovered from the trace on the duplicated rows."""
    iter_blocks(f, x)
    return trace2(vstack(f, f), x, wand)


def wand_from_iter(f: PartialMap, g: PartialMap,
                   iter_fn: Callable[[Matrix, int], Matrix] | None = None) -> PartialMap:
    """``f ⩚ g := Iter([f g])`` for a single-object iteration operator."""
    iter_fn = iter_from_trace if iter_fn is None else iter_fn
    return iter_fn(hstack(single(f), single(g)), 1)[0, 0]


# -- traces --------------------------------------------------------------------

def trace_blocks(g: Matrix, x: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    _check_traced(g, x)
    return split2(g, x, x)


def trace2(g: Matrix, x: int, wand: MatWand | None = None) -> Matrix:
    """``Tr^X(G) = G₄ ⊔ G₃ (G₁ ⩚ G₂)``."""
    g1, g2, g3, g4 = trace_blocks(g, x)
    return mat_join(g4, mat_compose(g3, _wand(wand)(g1, g2)))


def trace_n(g: Matrix, cut: int, wand: MatWand | None = None) -> Matrix:
    """Trace out the first ``cut`` parts one at a time, leftmost first."""
    _check_traced(g, cut)
    for _ in range(cut):
        g = trace2(g, 1, wand)
    return g


def trace_from_iter(g: Matrix, x: int, wand: MatWand | None = None) -> Matrix:
    """Copairing form ``ι₂ G [Iter(ι₁ G); 1_B]``."""
    _check_traced(g, x)
    xs = g.dom.slice(0, x)
    a = g.dom.slice(x, len(g.dom))
    b = g.cod.slice(x, len(g.cod))
    it = iterate(mat_compose(injection([xs, a], 0), g), x, wand)
    return mat_compose(mat_compose(injection([xs, a], 1), g), vstack(it, mat_identity(b)))


def trace_feedback(g: Matrix, x: int, wand: MatWand | None = None) -> Matrix:
    """Feedback form ``ι₂ Iter^{X+A}(G (ι₁ + 1_B))``.

    The whole input ``X + A`` is iterated; landing in ``X`` re-enters the
    loop and landing in ``B`` exits. Entering at ``A`` then gives the trace.
    """
    _check_traced(g, x)
    xs = g.dom.slice(0, x)
    a = g.dom.slice(x, len(g.dom))
    b = g.cod.slice(x, len(g.cod))
    h = mat_compose(g, direct_sum(injection([xs, a], 0), mat_identity(b)))
    return mat_compose(injection([xs, a], 1), iterate(h, len(xs) + len(a), wand))


def closed_form_trace(g: Matrix, x: int) -> Matrix:
    """``G₄ ⊔ G₃G₂ ⊔ G₃G₁G₂ ⊔ …``, truncated once ``G₁ⁿ`` can no longer be nonzero."""
    g1, g2, g3, g4 = trace_blocks(g, x)
    terms = [g4]
    walk = g3
    for _ in range(sum(p.size for p in g1.dom.parts) + 1):
        terms.append(mat_compose(walk, g2))
        walk = mat_compose(walk, g1)
    return mat_join_all(terms)


# -- structural helpers used by the law suite -------------------------------------

def swap_traced(g: Matrix, x: int, y: int) -> Matrix:
    """Conjugate ``G: X + Y + A → X + Y + B`` into ``Y + X + A → Y + X + B``."""
    _check_traced(g, x + y)
    xs, ys = g.dom.slice(0, x), g.dom.slice(x, x + y)
    a = g.dom.slice(x + y, len(g.dom))
    b = g.cod.slice(x + y, len(g.cod))
    pre = direct_sum(symmetry(ys, xs), mat_identity(a))
    post = direct_sum(symmetry(xs, ys), mat_identity(b))
    return mat_compose(mat_compose(pre, g), post)


def sigma(x: MatObj) -> Matrix:
    """The symmetry ``σ: X + X → X + X``, whose trace is the identity."""
    return symmetry(x, x)


def trace_request_from_json(doc: dict) -> tuple[Matrix, int | None]:
    if "matrix" in doc:
        cut = doc.get("cut")
        return matrix_from_json(doc["matrix"]), None if cut is None else int(cut)
    return matrix_from_json(doc), None


__all__ = [
    "MatWand", "BaseWand", "lift_wand", "mat_wand", "iter_blocks", "iterate",
    "iter_from_trace", "wand_from_iter", "trace_blocks", "trace2", "trace_n",
    "trace_from_iter", "trace_feedback", "closed_form_trace", "swap_traced", "sigma",
    "trace_request_from_json",
]
