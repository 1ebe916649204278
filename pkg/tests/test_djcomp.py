import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleenewand.djcomp import (
    DjMap,
    dj_compose,
    dj_embed,
    dj_from_json,
    dj_identity,
    dj_join,
    dj_leq,
    dj_perp,
    dj_restriction,
    dj_to_json,
    dj_zero,
    down_set,
)
from kleenewand.errors import DisjointnessError
from kleenewand.finpar import FinObj, PartialMap, compose, restriction, zero
from kleenewand.interference import MAXIMAL, join2, perp
from strategies import maps

X = FinObj(3)


def pm(table):
    return PartialMap(X, X, table)


def dj(*tables):
    return DjMap(X, X, [pm(t) for t in tables])


def test_compose_examples():
    s = dj([1, None, None])
    t = dj([None, 2, None])
    assert dj_compose(s, t) == dj([2, None, None])
    assert dj_compose(s, dj_identity(X)) == s
    assert dj_compose(s, dj_zero(X, X)).gens == frozenset()


def test_restriction_example():
    s = dj([1, None, None], [None, None, 0])
    assert dj_restriction(s) == dj([0, None, None], [None, None, 2])


def test_split_generators_differ_from_their_join():
    f = pm([1, None, 0])
    g1, g2 = pm([1, None, None]), pm([None, None, 0])
    assert join2(g1, g2) == f
    whole, split = DjMap(X, X, [f]), DjMap(X, X, [g1, g2])
    assert whole != split
    assert dj_leq(split, whole)
    assert not dj_leq(whole, split)


def test_join_is_union_of_generators():
    f, g = dj([1, None, None]), dj([None, 2, None])
    assert dj_join([f, g]) == dj([1, None, None], [None, 2, None])
    assert dj_join([], X, X) == dj_zero(X, X)
    with pytest.raises(DisjointnessError):
        dj_join([f, f])


def test_generators_must_be_nonzero_and_disjoint():
    with pytest.raises(ValueError):
        DjMap(X, X, [zero(X, X)])
    with pytest.raises(DisjointnessError):
        DjMap(X, X, [pm([1, None, None]), pm([2, None, None])])


def test_embed_examples():
    f, g = pm([1, 2, None]), pm([None, 0, 1])
    assert dj_embed(compose(f, g)) == dj_compose(dj_embed(f), dj_embed(g))
    assert dj_embed(zero(X, X)).gens == frozenset()
    a, b = pm([1, None, None]), pm([None, 0, None])
    assert perp(MAXIMAL, a, b) and dj_perp(dj_embed(a), dj_embed(b))


def test_down_set_and_json():
    s = dj([1, None, 0])
    assert len(down_set(s)) == 4
    assert down_set(dj_zero(X, X)) == {zero(X, X)}
    assert dj_from_json(dj_to_json(s)) == s


@st.composite
def dj_maps(draw, n=None, m=None):
    n = draw(st.integers(0, 4)) if n is None else n
    m = draw(st.integers(1, 3)) if m is None else m
    owner = draw(st.lists(st.integers(-1, 2), min_size=n, max_size=n))
    gens = []
    for k in range(3):
        t = [draw(st.integers(0, m - 1)) if o == k else None for o in owner]
        f = PartialMap(n, m, t)
        if not f.is_zero():
            gens.append(f)
    return DjMap(FinObj(n), FinObj(m), gens)


@given(st.data())
def test_restriction_axioms_in_dj(data):
    n, m, k = (data.draw(st.integers(1, 3)) for _ in range(3))
    s, t = data.draw(dj_maps(n, m)), data.draw(dj_maps(n, m))
    u = data.draw(dj_maps(m, k))
    assert dj_compose(dj_restriction(s), s) == s
    assert dj_compose(dj_restriction(s), dj_restriction(t)) == \
        dj_compose(dj_restriction(t), dj_restriction(s))
    assert dj_restriction(dj_compose(dj_restriction(t), s)) == \
        dj_compose(dj_restriction(t), dj_restriction(s))
    assert dj_compose(s, dj_restriction(u)) == dj_compose(dj_restriction(dj_compose(s, u)), s)


@given(st.data())
def test_order_is_down_set_inclusion(data):
    n, m = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 2))
    s, t = data.draw(dj_maps(n, m)), data.draw(dj_maps(n, m))
    assert dj_leq(s, t) == (down_set(s) <= down_set(t))
    assert (down_set(s) == down_set(t)) == (s == t)


@given(st.data())
def test_embed_is_faithful(data):
    n, m = data.draw(st.integers(0, 4)), data.draw(st.integers(0, 3))
    f, g = data.draw(maps(n, m)), data.draw(maps(n, m))
    assert (dj_embed(f) == dj_embed(g)) == (f == g)
    assert dj_embed(restriction(f)) == dj_restriction(dj_embed(f))
