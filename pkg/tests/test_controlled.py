import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starcats.controlled import (MAX_POINTS, BornCoarseSpace, ControlledObject,
                                 IncompatibleStructures, build_vplus, check_measure, compose,
                                 controlled_by, equivariant_vplus, group_space, is_controlled,
                                 pushforward, transpose, validate_space, vplus_action)
from starcats.equivariant import FinGroup, cyclic, trivial_group
from starcats.fincat import BoundExceeded, CategoryError, ParseError, check_functor


def _pair(joined):
    return BornCoarseSpace(["a", "b"], [("a", "b")] if joined else ())


# spaces

def test_point_space_from_json():
    X = validate_space({"points": ["p"]})
    assert X.n == 1 and X.maximal == frozenset({(0, 0)})


def test_generators_close_to_an_equivalence_relation():
    X = BornCoarseSpace(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert (0, 2) in X.maximal and (2, 0) in X.maximal


def test_bornology_must_contain_points():
    with pytest.raises(IncompatibleStructures) as err:
        validate_space({"points": ["a", "b"], "bornology": [["a"]]})
    assert err.value.witness == "b"


def test_bornology_is_closed_under_unions():
    X = validate_space({"points": ["a", "b"], "bornology": [["a"], ["b"]]})
    assert frozenset({0, 1}) in X.bornology


def test_malformed_space_is_a_parse_error():
    with pytest.raises(ParseError):
        validate_space({"point": ["a"]})


def test_group_action_must_be_multiplicative():
    Z2 = cyclic(2)
    with pytest.raises(CategoryError):
        BornCoarseSpace(["a", "b"], (), "all", Z2, [{"a": "b", "b": "a"}, {"a": "b", "b": "a"}])


def test_json_round_trip(corpus):
    for X in corpus.spaces.values():
        Y = validate_space(X.to_json())
        assert Y.points == tuple(str(p) for p in X.points)
        assert (Y.maximal, Y.bornology) == (X.maximal, X.bornology)


def test_point_bound():
    X = BornCoarseSpace([str(k) for k in range(MAX_POINTS + 1)])
    with pytest.raises(BoundExceeded):
        build_vplus(X)


# measures and control

@pytest.mark.parametrize("labels", [(), (0,), (0, 0), (1, 0), (0, 1, 1)])
def test_label_measures_obey_the_axioms(labels):
    obj = ControlledObject(_pair(False), labels)
    assert check_measure(obj.space, obj.size, obj.measure)


def test_measure_not_determined_on_points_is_rejected():
    X = _pair(False)
    # a measure that forgets the carrier point 1
    bad = lambda Y: frozenset({(0, 0)}) if 0 in Y else frozenset()
    assert not check_measure(X, 2, bad)


def test_identity_is_diagonal_controlled():
    X = _pair(False)
    A = ControlledObject(X, (0, 1))
    R = frozenset({(0, 0), (1, 1)})
    assert is_controlled(R, A, A, X.diag())


def test_crossing_relation_needs_the_joining_entourage():
    A = ControlledObject(_pair(False), (0, 1))
    R = frozenset({(1, 0)})
    assert not is_controlled(R, A, A, _pair(False).maximal)
    B = ControlledObject(_pair(True), (0, 1))
    assert is_controlled(R, B, B, _pair(True).maximal)


labels_of = st.lists(st.integers(0, 2), max_size=2)
entourages = st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)))


@settings(max_examples=60, deadline=None)
@given(labels_of, labels_of, entourages, st.data())
def test_measure_control_matches_pointwise_control(src, tgt, U, data):
    X = BornCoarseSpace(["a", "b", "c"])
    A, B = ControlledObject(X, src), ControlledObject(X, tgt)
    pairs = [(y, x) for y in range(len(tgt)) for x in range(len(src))]
    R = frozenset(data.draw(st.sets(st.sampled_from(pairs))) if pairs else ())
    U = frozenset(U)
    assert bool(is_controlled(R, A, B, U)) == controlled_by(R, A, B, U)


@settings(max_examples=60, deadline=None)
@given(labels_of, labels_of, labels_of, entourages, entourages, st.data())
def test_control_composes_and_transposes(a, b, c, U, V, data):
    X = BornCoarseSpace(["a", "b", "c"])
    A, B, C = (ControlledObject(X, s) for s in (a, b, c))
    U, V = frozenset(U), frozenset(V)

    def rel(m, m2):
        pairs = [(y, x) for y in range(m2) for x in range(m)]
        return frozenset(data.draw(st.sets(st.sampled_from(pairs))) if pairs else ())

    R, S = rel(A.size, B.size), rel(B.size, C.size)
    if controlled_by(R, A, B, U) and controlled_by(S, B, C, V):
        assert controlled_by(compose(S, R), A, C, compose(V, U))
    if controlled_by(R, A, B, U):
        assert controlled_by(transpose(R), B, A, transpose(U))


# V⁺

def test_vplus_of_point():
    V = build_vplus(validate_space({"points": ["p"]}))
    # carriers of size 0, 1, 2 and every relation between them
    assert V.n_obj == 3
    assert V.n_mor == sum(2 ** (m * k) for m in range(3) for k in range(3))
    assert len(V.marked) == 1 + 1 + 2
    V.validate()


def test_vplus_of_discrete_pair_separates_points():
    V = build_vplus(_pair(False), max_size=1)
    a, b = V.obj_of[(0,)], V.obj_of[(1,)]
    assert not V.hom(a, b) or all(not V.relations[f][2] for f in V.hom(a, b))


def test_marked_morphisms_are_unitary_and_closed(corpus):
    for X in corpus.spaces.values():
        V = build_vplus(X)
        V.validate()
        marked = set(V.marked)
        assert all(V.is_unitary(f) for f in marked)
        for f in marked:
            for g in marked:
                if V.src[g] == V.tgt[f]:
                    assert V.comp[(g, f)] in marked


def test_pushforward_to_point_is_a_functor():
    X, P = _pair(True), validate_space({"points": ["p"]})
    V, W = build_vplus(X), build_vplus(P)
    F = pushforward([0, 0], X, P, V, W)
    assert check_functor(F, star=True, marking=True)
    assert F.ob[V.obj_of[(0, 1)]] == W.obj_of[(0, 0)]


# equivariant V⁺

def test_trivial_group_recovers_vplus():
    X = BornCoarseSpace(["p"], (), "all", trivial_group(), [{"p": "p"}])
    E = equivariant_vplus(X)
    V = build_vplus(X)
    assert (E.category.n_obj, E.category.n_mor) == (V.n_obj, V.n_mor)
    assert E.check_agreement()


def test_z2_agreement(corpus):
    X = corpus.spaces["z2"]
    vplus_action(X, build_vplus(X)).validate()
    v = equivariant_vplus(X).check_agreement()
    assert v, v.witness


def test_non_abelian_groups_are_refused():
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[x]] for x in range(3))) for q in perms] for p in perms]
    S3 = FinGroup(range(6), table)
    assert not S3.is_abelian()
    X = group_space(S3)
    with pytest.raises(ValueError):
        equivariant_vplus(X, max_size=1)
