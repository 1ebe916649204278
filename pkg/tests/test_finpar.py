import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kleenewand.errors import ShapeError
from kleenewand.finpar import (
    FinObj,
    PartialMap,
    compose,
    identity,
    is_rest_idem,
    is_total,
    leq,
    map_from_json,
    map_to_json,
    power,
    rest_idem,
    rest_idem_from_mask,
    restriction,
    zero,
)
from strategies import any_map, composable, endo, maps, parallel

F = PartialMap(3, 3, [1, None, 0])  # {0↦1, 2↦0}


def test_compose_example():
    g = PartialMap(3, 3, [None, 2, None])
    assert oracles.compose({0: 1, 2: 0}, {1: 2}) == {0: 2}
    assert compose(F, g).table == (2, None, None)


def test_compose_identity_and_zero():
    assert compose(F, identity(3)) == F
    assert compose(identity(3), F) == F
    assert compose(F, zero(3, 3)) == zero(3, 3)
    assert compose(zero(3, 3), F) == zero(3, 3)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeError):
        compose(PartialMap(2, 3, [0, 1]), PartialMap(2, 2, [0, 1]))


def test_restriction_examples():
    assert restriction(F).table == (0, None, 2)
    assert restriction(zero(3, 3)) == zero(3, 3)
    assert restriction(identity(4)) == identity(4)


def test_leq_examples():
    assert leq(zero(3, 3), F)
    assert leq(PartialMap(3, 3, [1, None, None]), F)
    assert not leq(PartialMap(3, 3, [2, None, None]), F)


def test_total_and_idempotent_examples():
    assert is_total(identity(3))
    assert not is_total(PartialMap(2, 2, [1, None]))
    assert is_rest_idem(PartialMap(3, 3, [0, 1, None]))
    assert not is_rest_idem(PartialMap(3, 3, [1, None, None]))
    assert rest_idem(3, [0, 2]) == rest_idem_from_mask(3, 0b101)


def test_table_validation():
    with pytest.raises(ShapeError):
        PartialMap(3, 3, [0, 1])
    with pytest.raises(ValueError):
        PartialMap(2, 2, [0, 2])
    with pytest.raises(ValueError):
        FinObj(2, ["a", "a"])
    with pytest.raises(ValueError):
        rest_idem(2, [5])


def test_labels_and_equality():
    x = FinObj(2, ["a", "b"])
    assert x == FinObj(2)
    assert x != FinObj(2, ["b", "a"])
    assert x.index("b") == 1
    with pytest.raises(KeyError):
        x.index("c")
    f = PartialMap(x, x, [1, None])
    assert "a↦b" in repr(f)


def test_immutability():
    with pytest.raises(AttributeError):
        F.t = (0, 0, 0)
    with pytest.raises(AttributeError):
        FinObj(1).size = 2


def test_power():
    f = PartialMap(3, 3, [1, 2, None])
    assert power(f, 0) == identity(3)
    assert power(f, 2).table == (2, None, None)
    assert power(f, 3) == zero(3, 3)


def test_json_round_trip_with_labels():
    x = FinObj(2, ["p", "q"])
    f = PartialMap(x, FinObj(1, ["z"]), [None, 0])
    doc = json.loads(json.dumps(map_to_json(f)))
    assert doc == {"dom": 2, "cod": 1, "table": [None, 0], "dom_labels": ["p", "q"],
                   "cod_labels": ["z"]}
    assert map_from_json(doc) == f


@pytest.mark.parametrize("doc", [
    {"dom": 2, "table": [0, 1]},
    {"dom": 2, "cod": 2, "table": "01"},
    {"dom": 2, "cod": 2, "table": [0, 1.5]},
    {"dom": 2, "cod": 2, "table": [True, 0]},
])
def test_json_rejects_malformed(doc):
    with pytest.raises(ValueError):
        map_from_json(doc)


@given(composable())
def test_compose_matches_dict_oracle(fg):
    f, g = fg
    assert oracles.to_dict(compose(f, g)) == oracles.compose(oracles.to_dict(f),
                                                             oracles.to_dict(g))


@given(parallel())
def test_leq_matches_dict_oracle(fg):
    f, g = fg
    assert leq(f, g) == oracles.leq(oracles.to_dict(f), oracles.to_dict(g))


@given(any_map())
def test_r1(f):
    assert compose(restriction(f), f) == f


@given(parallel())
def test_r2(fg):
    f, g = fg
    assert compose(restriction(f), restriction(g)) == compose(restriction(g), restriction(f))


@given(parallel())
def test_r3(fg):
    f, g = fg
    lhs = restriction(compose(restriction(g), f))
    assert lhs == compose(restriction(g), restriction(f))


@given(composable())
def test_r4(fg):
    f, g = fg
    assert compose(f, restriction(g)) == compose(restriction(compose(f, g)), f)


@given(st.data())
def test_order_is_partial_order_and_monotone(data):
    n, m, k = (data.draw(st.integers(0, 4)) for _ in range(3))
    f, g, h = (data.draw(maps(n, m)) for _ in range(3))
    k1 = data.draw(maps(m, k))
    assert leq(f, f)
    if leq(f, g) and leq(g, f):
        assert f == g
    if leq(f, g) and leq(g, h):
        assert leq(f, h)
    if leq(f, g):
        assert leq(compose(f, k1), compose(g, k1))
        assert leq(restriction(f), restriction(g))
    assert leq(zero(n, m), f)


@given(endo(), st.data())
def test_idempotents_form_a_meet_semilattice(f, data):
    n = f.dom.size
    e1 = restriction(f)
    e2 = data.draw(maps(n, n).map(restriction))
    meet = compose(e1, e2)
    assert is_rest_idem(meet)
    assert leq(meet, e1) and leq(meet, e2)
    assert compose(e1, identity(n)) == e1
    assert compose(e1, e1) == e1
