import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kleenewand.errors import DisjointnessError, PreconditionError, ShapeError
from kleenewand.finpar import PartialMap, compose, identity, leq, restriction, zero
from kleenewand.interference import MAXIMAL, MINIMAL, join, join2, perp
from kleenewand.lawlab.oracle import star_simulate, step_simulate
from kleenewand.wand import (
    complement,
    kleene_wand,
    relative_complement,
    star_to_wand,
    unrolled,
    upper_star,
    wand_delta,
    wand_terms,
    wand_to_star,
)
from strategies import disjoint_pair, endo, maps

F = PartialMap(3, 3, [1, 2, None])  # {0↦1, 1↦2}
G = PartialMap(3, 1, [None, None, 0])  # {2↦a}
CYCLE = PartialMap(3, 3, [1, 0, None])


def test_wand_examples():
    assert oracles.wand({0: 1, 1: 2}, {2: 0}) == {0: 0, 1: 0, 2: 0}
    assert kleene_wand(F, G).table == (0, 0, 0)
    assert oracles.wand({0: 1, 1: 0}, {2: 0}) == {2: 0}
    assert kleene_wand(CYCLE, G).table == (None, None, 0)


def test_wand_with_zero_body_or_guard():
    assert kleene_wand(zero(3, 3), G) == G
    assert kleene_wand(F, zero(3, 1)) == zero(3, 1)


def test_wand_terms_are_the_join_summands():
    terms = wand_terms(F, G)
    assert [t.table for t in terms] == [(None, None, 0), (None, 0, None), (0, None, None)]
    assert join(MAXIMAL, terms) == kleene_wand(F, G)


def test_wand_preconditions():
    with pytest.raises(ShapeError, match="endomorphism"):
        kleene_wand(PartialMap(2, 3, [None, None]), PartialMap(2, 1, [None, None]))
    with pytest.raises(ShapeError):
        kleene_wand(F, PartialMap(2, 1, [None, None]))
    with pytest.raises(DisjointnessError) as exc:
        kleene_wand(F, PartialMap(3, 1, [0, None, None]))
    assert exc.value.point == 0


def test_minimal_wand_is_the_guard():
    g = PartialMap(3, 1, [0, 0, None])
    assert wand_delta(zero(3, 3), g) == g
    with pytest.raises(DisjointnessError):
        wand_delta(F, G)
    assert kleene_wand(zero(3, 3), g, MINIMAL) == g


def test_complement_examples():
    e = PartialMap(3, 3, [0, 1, None])
    assert complement(e).table == (None, None, 2)
    assert complement(identity(3)) == zero(3, 3)
    assert complement(zero(3, 3)) == identity(3)
    with pytest.raises(PreconditionError):
        complement(F)


def test_relative_complement_examples():
    g = PartialMap(3, 3, [1, None, 0])
    f = PartialMap(3, 3, [1, None, None])
    assert relative_complement(f, g).table == (None, None, 0)
    assert relative_complement(g, g) == zero(3, 3)
    assert relative_complement(zero(3, 3), g) == g
    with pytest.raises(PreconditionError):
        relative_complement(g, f)


def test_star_examples():
    assert oracles.star({0: 1, 1: 2}, 3) == {0: 2, 1: 2, 2: 2}
    assert upper_star(F).table == (2, 2, 2)
    assert upper_star(identity(4)) == zero(4, 4)
    assert upper_star(zero(3, 3)) == identity(3)
    with pytest.raises(ShapeError):
        upper_star(PartialMap(2, 3, [0, 1]))


def test_star_and_wand_convert():
    assert star_to_wand(upper_star, F, G) == kleene_wand(F, G)
    assert star_to_wand(upper_star, zero(3, 3), G) == G
    assert wand_to_star(kleene_wand, F) == upper_star(F)


@given(disjoint_pair())
def test_wand_matches_fixpoint_oracle(fg):
    f, g = fg
    assert oracles.to_dict(kleene_wand(f, g)) == oracles.wand(oracles.to_dict(f),
                                                              oracles.to_dict(g))


@given(disjoint_pair())
def test_wand_matches_step_simulation(fg):
    f, g = fg
    assert kleene_wand(f, g).table == tuple(step_simulate(f, g, x) for x in range(f.dom.size))


@given(endo())
def test_star_matches_oracles(f):
    n = f.dom.size
    s = upper_star(f)
    assert oracles.to_dict(s) == oracles.star(oracles.to_dict(f), n)
    assert s.table == tuple(star_simulate(f, x) for x in range(n))


@given(disjoint_pair(), st.data())
def test_wand_axioms(fg, data):
    f, g = fg
    x, a = f.dom.size, g.cod.size
    w = kleene_wand(f, g)
    # ⩚.1
    assert join2(g, compose(f, w)) == w
    # ⩚.2
    h = data.draw(maps(a, data.draw(st.integers(0, 3))))
    assert compose(w, h) == kleene_wand(f, compose(g, h))
    # inductivity: any h with fh ≤ h and g ≤ h is above the wand
    up = data.draw(maps(x, a))
    if leq(compose(f, up), up) and leq(g, up):
        assert leq(w, up)


@given(disjoint_pair(), st.integers(0, 4))
def test_unrolling(fg, n):
    f, g = fg
    assert unrolled(f, g, n) == kleene_wand(f, g)


@given(disjoint_pair())
def test_terms_are_pairwise_disjoint(fg):
    terms = wand_terms(*fg)
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            assert perp(MAXIMAL, terms[i], terms[j])


@given(st.data())
def test_dinaturality(data):
    # ⩚.3 with k: X → Y, f: Y → X and g: Y → A disjoint from f
    x, y = data.draw(st.integers(0, 4)), data.draw(st.integers(0, 4))
    k = data.draw(maps(x, y))
    f2 = data.draw(maps(y, x))
    g2 = compose(complement(restriction(f2)), data.draw(maps(y, 2)))
    lhs = kleene_wand(compose(k, f2), compose(k, g2))
    rhs = compose(k, kleene_wand(compose(f2, k), g2))
    assert lhs == rhs


@given(endo(), st.data())
def test_star_axiom_one_and_round_trip(f, data):
    n = f.dom.size
    s = upper_star(f)
    assert join2(complement(restriction(f)), compose(f, s)) == s
    g = data.draw(maps(n, 2))
    g = compose(complement(restriction(f)), g)
    assert star_to_wand(lambda h: wand_to_star(kleene_wand, h), f, g) == kleene_wand(f, g)
    assert wand_to_star(lambda a, b: star_to_wand(upper_star, a, b), f) == s
