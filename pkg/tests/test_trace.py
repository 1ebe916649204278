import pytest
from hypothesis import given

import oracles
from kleenewand.errors import PreconditionError, ShapeError
from kleenewand.finpar import PartialMap, identity, zero
from kleenewand.lawlab.impl import guard_only
from kleenewand.matext import (
    MatObj,
    Matrix,
    from_blocks,
    hstack,
    mat_identity,
    mat_zero,
    matrix_to_json,
    single,
    split2,
)
from kleenewand.trace import (
    closed_form_trace,
    iter_from_trace,
    iterate,
    lift_wand,
    sigma,
    swap_traced,
    trace2,
    trace_feedback,
    trace_from_iter,
    trace_n,
    trace_request_from_json,
    wand_from_iter,
)
from kleenewand.wand import kleene_wand
from strategies import disjoint_pair, traced

X3, A1 = MatObj([3]), MatObj([1])


def iter_input(f1, f2):
    return hstack(single(f1), single(f2))


def test_iterate_examples():
    f1, f2 = PartialMap(3, 3, [1, 2, None]), PartialMap(3, 1, [None, None, 0])
    assert iterate(iter_input(f1, f2), 1) == single(PartialMap(3, 1, [0, 0, 0]))
    assert iterate(iter_input(zero(3, 3), f2), 1) == single(f2)
    assert iterate(iter_input(identity(3), zero(3, 1)), 1) == mat_zero(X3, A1)


def test_iterate_rejects_overlapping_blocks():
    with pytest.raises(PreconditionError):
        lift_wand(kleene_wand)(single(PartialMap(3, 3, [1, None, None])),
                               single(PartialMap(3, 1, [0, None, None])))


def test_yanking_example():
    for sizes in ([1], [2], [0, 3], [2, 1]):
        x = MatObj(sizes)
        assert trace2(sigma(x), len(x)) == mat_identity(x)


def test_trace_example_with_feedback():
    # X = {0, 1}, A = B = {a}: G₁ = {0↦1}, G₂ = {1↦a}, G₃ = {a↦0}, G₄ = 0
    g1, g2 = PartialMap(2, 2, [1, None]), PartialMap(2, 1, [None, 0])
    g3, g4 = PartialMap(1, 2, [0]), zero(1, 1)
    g = from_blocks([[single(g1), single(g2)], [single(g3), single(g4)]])
    assert kleene_wand(g1, g2).table == (0, 0)
    assert trace2(g, 1) == single(identity(1))


def test_no_feedback_path_gives_the_spectator_block():
    g1, g2 = PartialMap(2, 2, [1, None]), PartialMap(2, 1, [None, 0])
    g4 = PartialMap(1, 1, [0])
    g = from_blocks([[single(g1), single(g2)], [single(zero(1, 2)), single(g4)]])
    assert trace2(g, 1) == single(g4)


def test_trace_n_base_cases():
    g = from_blocks([[single(PartialMap(2, 2, [1, None])), single(PartialMap(2, 1, [None, 0]))],
                     [single(PartialMap(1, 2, [0])), single(zero(1, 1))]])
    assert trace_n(g, 0) == g
    assert trace_n(g, 1) == trace2(g, 1)
    with pytest.raises(ShapeError):
        trace_n(g, 3)


def test_trace_n_on_two_traced_parts_either_order():
    x, a = MatObj([2, 1]), MatObj([1])
    g = Matrix(x + a, x + a, [
        [PartialMap(2, 2, [None, 0]), PartialMap(2, 1, [0, None]), zero(2, 1)],
        [zero(1, 2), zero(1, 1), PartialMap(1, 1, [0])],
        [PartialMap(1, 2, [1]), zero(1, 1), zero(1, 1)],
    ])
    whole = trace_n(g, 2)
    assert whole == trace2(g, 2)
    assert whole == trace2(swap_traced(g, 1, 1), 2)
    assert whole == trace2(trace2(g, 1), 1)
    assert whole == trace2(trace2(swap_traced(g, 1, 1), 1), 1)
    assert whole == single(identity(1))


def test_iteration_wand_round_trips():
    f, g = PartialMap(3, 3, [1, 2, None]), PartialMap(3, 1, [None, None, 0])
    assert wand_from_iter(f, g) == kleene_wand(f, g)
    assert wand_from_iter(zero(3, 3), g) == g
    row = iter_input(f, g)
    assert iter_from_trace(row, 1) == iterate(row, 1)


def test_trace_request_json():
    g = sigma(MatObj([2]))
    assert trace_request_from_json({"matrix": matrix_to_json(g), "cut": 1}) == (g, 1)
    assert trace_request_from_json(matrix_to_json(g)) == (g, None)


def test_guard_only_wand_breaks_yanking_in_feedback_form():
    bad = lift_wand(guard_only)
    x = MatObj([2])
    assert trace2(sigma(x), 1, bad) == mat_identity(x)
    assert trace_feedback(sigma(x), 1, bad) != mat_identity(x)


@given(traced())
def test_trace_matches_fixpoint_oracle(gc):
    g, cut = gc
    t = trace2(g, cut)
    assert oracles.mat_to_dict(t) == oracles.trace(oracles.mat_to_dict(g), cut)


@given(traced())
def test_all_trace_forms_agree(gc):
    g, cut = gc
    t = trace2(g, cut)
    assert trace_n(g, cut) == t
    assert trace_from_iter(g, cut) == t
    assert trace_feedback(g, cut) == t
    assert closed_form_trace(g, cut) == t


@given(traced(max_parts=2, max_size=2))
def test_iteration_from_trace_matches_iterate(gc):
    g, cut = gc
    # G's first block row is an iteration input X → X + B
    g1, g2, _, _ = split2(g, cut, cut)
    row = hstack(g1, g2)
    assert iter_from_trace(row, cut) == iterate(row, cut)


@given(disjoint_pair(max_x=5, max_a=3))
def test_wand_from_iter_round_trip(fg):
    f, g = fg
    assert wand_from_iter(f, g) == kleene_wand(f, g)
    assert wand_from_iter(f, g, iterate) == kleene_wand(f, g)
