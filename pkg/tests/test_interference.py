import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kleenewand.errors import (
    CapacityError,
    DisjointnessError,
    PreconditionError,
    ShapeError,
    ValidationError,
)
from kleenewand.finpar import (
    FinObj,
    PartialMap,
    compose,
    identity,
    leq,
    rest_idem_from_mask,
    restriction,
    zero,
)
from kleenewand.interference import (
    MAXIMAL,
    MINIMAL,
    InterferenceRel,
    idem_perp,
    is_strong_join,
    join,
    join2,
    perp,
    relation_from_json,
    relation_to_json,
    search_nonstrong,
    validate_interference,
)
from strategies import maps

F = PartialMap(3, 3, [1, None, None])
G = PartialMap(3, 3, [None, None, 0])


def maximal_pairs(n):
    return [(a, b) for a in range(1 << n) for b in range(1 << n) if a & b == 0]


def minimal_pairs(n):
    return [(a, b) for a in range(1 << n) for b in range(1 << n) if a == 0 or b == 0]


def test_perp_examples():
    assert perp(MAXIMAL, F, G)
    assert not perp(MINIMAL, F, G)
    for rel in (MAXIMAL, MINIMAL):
        assert perp(rel, identity(3), zero(3, 3))
        assert perp(rel, zero(3, 3), identity(3))


def test_perp_needs_shared_domain():
    with pytest.raises(ShapeError):
        perp(MAXIMAL, F, PartialMap(2, 3, [None, None]))


@pytest.mark.parametrize("rel", [MAXIMAL, MINIMAL], ids=["maximal", "minimal"])
def test_builtin_relations_validate(rel):
    rep = validate_interference(rel, 4)
    assert rep.ok and rep.object_sizes == (0, 1, 2, 3, 4)


def test_validation_catches_reflexive_pair():
    rel = InterferenceRel.custom({1: [(1, 0), (0, 0), (1, 1)]})
    rep = validate_interference(rel, 1)
    assert (rep.ok, rep.axiom, rep.witness["e"]) == (False, "𝒪⊥.2", 1)
    with pytest.raises(ValidationError):
        rel.validate()


def test_validation_catches_missing_downward_pair():
    rel = InterferenceRel.custom({2: [(3, 0), (0, 0), (1, 0), (1, 2)]})
    rep = validate_interference(rel, 2)
    assert rep.axiom == "𝒪⊥.3"
    smaller = rep.witness["smaller"]
    assert idem_perp(rel, 2, rep.witness["e"], rep.witness["e_prime"])
    assert not idem_perp(rel, 2, *smaller)


def test_validation_catches_missing_pullback():
    # maximal on the 2-point object but minimal on the 3-point one: pulling
    # ({0}, {1}) back along an injection 3 → 2 gives a pair the 3-point
    # object does not relate
    rel = InterferenceRel.custom({2: maximal_pairs(2), 3: minimal_pairs(3)})
    rep = validate_interference(rel, 3)
    assert rep.axiom == "𝒪⊥.4"
    h = rep.witness["h"]
    assert (h["dom"], h["cod"]) == (3, 2)
    u, v = rep.witness["pulled_back"]
    assert not idem_perp(rel, 3, u, v)


def test_custom_relation_that_is_valid():
    rel = InterferenceRel.custom({1: maximal_pairs(1), 2: maximal_pairs(2)}).validate()
    f, g = PartialMap(2, 1, [0, None]), PartialMap(2, 1, [None, 0])
    assert perp(rel, f, g) and not perp(rel, f, f)
    with pytest.raises(ShapeError):
        perp(rel, PartialMap(3, 1, [0, None, None]), PartialMap(3, 1, [None] * 3))


def test_unvalidated_relation_is_refused():
    rel = InterferenceRel.custom({1: maximal_pairs(1)})
    with pytest.raises(ValidationError):
        perp(rel, PartialMap(1, 1, [0]), PartialMap(1, 1, [None]))


def test_validation_cap():
    with pytest.raises(CapacityError):
        validate_interference(MAXIMAL, 13)


def test_relation_json_format():
    doc = {"object_size": 2, "pairs": [[0, 0], [0, 3], [1, 2], [0, 1], [0, 2]]}
    rel = relation_from_json(doc)
    assert rel.sizes() == [2]
    assert relation_from_json(relation_to_json(rel)) == rel
    assert validate_interference(rel, 2).ok
    with pytest.raises(ValueError):
        relation_from_json({"pairs": []})


def test_validated_relations_sit_between_minimal_and_maximal():
    rels = [
        InterferenceRel.custom({2: maximal_pairs(2)}),
        InterferenceRel.custom({2: minimal_pairs(2)}),
        InterferenceRel.custom({2: minimal_pairs(2) + [(1, 2), (2, 1)]}),
    ]
    for rel in rels:
        rel = rel.validate()
        for a, b in itertools.product(range(4), repeat=2):
            if idem_perp(MINIMAL, 2, a, b):
                assert idem_perp(rel, 2, a, b)
            if idem_perp(rel, 2, a, b):
                assert idem_perp(MAXIMAL, 2, a, b)


def test_join_examples():
    assert join2(F, G).table == (1, None, 0)
    assert oracles.join({0: 1}, {2: 0}) == {0: 1, 2: 0}
    assert join2(F, zero(3, 3)) == F
    assert join(MAXIMAL, [], FinObj(3), FinObj(2)) == zero(3, 2)
    with pytest.raises(PreconditionError):
        join(MAXIMAL, [])


def test_join_reports_overlap_point():
    with pytest.raises(DisjointnessError) as exc:
        join2(F, PartialMap(3, 3, [2, None, None]))
    assert exc.value.point == 0 and exc.value.pair == (0, 1)


def test_minimal_join_only_adds_zero():
    assert join(MINIMAL, [F, zero(3, 3)]) == F
    with pytest.raises(DisjointnessError):
        join(MINIMAL, [F, G])


def test_strongness_examples():
    h = PartialMap(3, 3, [None, 1, None])
    assert is_strong_join(MAXIMAL, [F, G], h)
    assert is_strong_join(MINIMAL, [F, zero(3, 3)], zero(3, 3))
    with pytest.raises(PreconditionError):
        is_strong_join(MAXIMAL, [F], F)


def test_nonstrong_custom_relation_has_witness():
    found = search_nonstrong(3)
    assert found
    w = found[0]
    rel = InterferenceRel.custom({3: w["pairs"]}).assume_valid()
    h = rest_idem_from_mask(3, w["h"])
    assert not is_strong_join(rel, w["family_maps"], h)
    # none of the non-strong relations on one object survives full validation
    assert not any(w["passes_validation"] for w in found)
    assert search_nonstrong(2) == []


@st.composite
def family(draw, max_size=6, max_members=4):
    n, m = draw(st.integers(0, max_size)), draw(st.integers(0, max_size))
    k = draw(st.integers(0, max_members))
    owner = draw(st.lists(st.integers(-1, k - 1), min_size=n, max_size=n))
    fam = []
    for i in range(k):
        fam.append(PartialMap(n, m, [draw(st.integers(0, m - 1)) if o == i and m else None
                                     for o in owner]))
    return n, m, fam


@given(family(), st.data())
def test_join_laws(nmf, data):
    n, m, fam = nmf
    j = join(MAXIMAL, fam, FinObj(n), FinObj(m))
    assert oracles.to_dict(j) == oracles.join(*map(oracles.to_dict, fam))
    for f in fam:
        assert leq(f, j)
    # any map above every member is above the join
    upper = data.draw(maps(n, m))
    if all(leq(f, upper) for f in fam):
        assert leq(j, upper)
    k_in = data.draw(st.integers(0, 4))
    h = data.draw(maps(k_in, n))
    assert compose(h, j) == join(MAXIMAL, [compose(h, f) for f in fam], FinObj(k_in), FinObj(m))
    k_out = data.draw(st.integers(0, 4))
    k = data.draw(maps(m, k_out))
    assert compose(j, k) == join(MAXIMAL, [compose(f, k) for f in fam], FinObj(n),
                                 FinObj(k_out))
    assert restriction(j) == join(MAXIMAL, [restriction(f) for f in fam], FinObj(n), FinObj(n))


@given(family(), st.data())
def test_maximal_joins_are_strong(nmf, data):
    n, m, fam = nmf
    h = data.draw(maps(n, data.draw(st.integers(0, 3))))
    if all(perp(MAXIMAL, f, h) for f in fam):
        assert is_strong_join(MAXIMAL, fam, h)


@given(st.data())
def test_interference_axioms_on_maps(data):
    n, m = data.draw(st.integers(0, 5)), data.draw(st.integers(0, 5))
    f, g = data.draw(maps(n, m)), data.draw(maps(n, m))
    for rel in (MAXIMAL, MINIMAL):
        assert perp(rel, f, g) == perp(rel, g, f)
        if perp(rel, f, f):
            assert f == zero(n, m)
        if perp(rel, f, g):
            assert compose(restriction(f), g) == zero(n, m)
            assert compose(restriction(g), f) == zero(n, m)
            # restriction-closed: the maps and their restrictions relate alike
            assert perp(rel, restriction(f), restriction(g))
        if perp(MINIMAL, f, g):
            assert perp(MAXIMAL, f, g)
