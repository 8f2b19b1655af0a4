import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starcats.equivariant import bg, cyclic
from starcats.fincat import (FinCategory, Functor, InvalidMarking, discrete, enumerate_functors,
                             find_isomorphism, indiscrete, point)
from starcats.linear import LinMor, check_transport, linearize
from starcats.scalars import GaussQ
from starcats.starcat import (FreeStarPresentation, IllTypedAssignment, check_representability,
                              classifier, free_star_evaluate, is_unitary, is_weak_equivalence,
                              ma, marked_subcategory, mi, mi_ma_forget, represented_hom,
                              weak_equivalence_by_search)

BZ2 = bg(cyclic(2))


# unitaries

def test_identities_are_unitary():
    C = classifier("unitary")
    assert all(is_unitary(C, i) for i in C.ident)


def test_group_elements_are_unitary():
    assert is_unitary(BZ2, 1)


def test_twice_the_identity_is_not_unitary():
    L = linearize(point())
    two = LinMor(0, 0, (GaussQ(2),))
    assert not is_unitary(L, two)


# classifiers

def test_object_classifier():
    C = classifier("object")
    assert (C.n_obj, C.n_mor) == (1, 1)


@pytest.mark.parametrize("kind", ["unitary", "marked_unitary"])
def test_unitary_classifiers(kind):
    C = classifier(kind)
    u, us = C.mor_labels.index("u"), C.mor_labels.index("u*")
    assert (C.n_obj, C.n_mor) == (2, 4)
    assert C.comp[(us, u)] == C.ident[0] and C.comp[(u, us)] == C.ident[1]
    assert C.star[u] == us
    assert (u in C.marked) == (kind == "marked_unitary")


# represented functors

def test_objects_of_the_unitary_classifier():
    assert len(represented_hom("object", classifier("unitary")).elements) == 2


def test_unitaries_of_bz2():
    assert represented_hom("unitary", BZ2).elements == [0, 1]


def test_marked_morphisms_of_mi_bz2():
    assert represented_hom("marked", mi(BZ2)).elements == [0]


@pytest.mark.parametrize("kind", ["object", "unitary", "marked", "morphism"])
def test_representability_on_corpus(corpus, kind):
    for name, B in corpus.categories.items():
        if B.star is None or (kind == "marked" and B.marked is None):
            continue
        v = check_representability(kind, B)
        assert v, (name, v.witness)
        if kind != "morphism":
            C = classifier({"object": "object", "unitary": "unitary",
                            "marked": "marked_unitary"}[kind])
            expected = {"object": B.n_obj, "unitary": len(B.unitaries()),
                        "marked": len(B.marked or ())}[kind]
            assert len(enumerate_functors(C, B)) == expected


# markings

def test_ma_and_mi_of_bz2():
    assert ma(BZ2.replace(marked=None)).marked == frozenset({0, 1})
    assert mi(BZ2).marked == frozenset({0})


def test_forget_marking_keeps_tables():
    A = mi_ma_forget(classifier("marked_unitary"), "forget_marking")
    B = mi_ma_forget(classifier("unitary"), "forget_marking")
    assert A.marked is None and A.key() == B.key()


def test_marked_subcategory_of_marked_interval_is_indiscrete():
    assert find_isomorphism(marked_subcategory(classifier("marked_unitary")), indiscrete(2))


def test_marked_subcategory_of_mi_is_discrete(corpus):
    for C in corpus.categories.values():
        if C.star is None:
            continue
        assert find_isomorphism(marked_subcategory(mi(C)), discrete(C.n_obj)) is not None


def test_marked_subcategory_of_ma_bz2():
    assert find_isomorphism(marked_subcategory(ma(BZ2)), BZ2) is not None


def test_star_invariants_on_corpus(corpus):
    for C in corpus.categories.values():
        if C.star is None:
            continue
        for f in range(C.n_mor):
            assert C.star[C.star[f]] == f
            assert (C.src[C.star[f]], C.tgt[C.star[f]]) == (C.tgt[f], C.src[f])
        assert all(C.star[i] == i for i in C.ident)
        for (g, f), h in C.comp.items():
            assert C.star[h] == C.comp[(C.star[f], C.star[g])]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["projection", "partial_isometry", "unitary", "bz4", "ind3"]),
       st.data())
def test_injected_non_unitary_is_rejected(corpus, name, data):
    C = corpus.categories[name]
    non_unitary = [f for f in range(C.n_mor) if not C.is_unitary(f)]
    if not non_unitary:
        return
    bad = data.draw(st.sampled_from(non_unitary))
    with pytest.raises(InvalidMarking):
        FinCategory(C.objects, zip(C.mor_labels, C.src, C.tgt), C.ident, C.comp,
                    star=C.star, marked=set(C.ident) | {bad})


# weak equivalences

def test_identity_is_weak_equivalence(corpus):
    for C in corpus.categories.values():
        assert is_weak_equivalence(Functor(C, C, range(C.n_obj), range(C.n_mor)))


def test_point_into_interval_in_unmarked_setting():
    pt, U = point().replace(marked=None), classifier("unitary").replace(marked=None)
    F = Functor(pt, U, [0], [0])
    assert is_weak_equivalence(F)
    assert weak_equivalence_by_search(F)


def test_point_into_mi_interval_is_not_marked_equivalence():
    F = Functor(point(), mi(classifier("unitary")), [0], [0])
    v = is_weak_equivalence(F)
    assert not v and v.witness[0] == "marked"
    assert not weak_equivalence_by_search(F)


def test_lemma_route_agrees_with_search_on_corpus(corpus):
    for name, F in corpus.functors.items():
        assert bool(is_weak_equivalence(F)) == bool(weak_equivalence_by_search(F)), name


# free *-categories

def test_free_arrow_into_interval():
    P = FreeStarPresentation([0, 1], [("a", 0, 1, False)])
    U = classifier("unitary")
    u = U.mor_labels.index("u")
    F = free_star_evaluate(P, {0: u}, U)
    a = P.word(0, [(0, False)])
    assert F(P.compose(P.star(a), a)) == U.ident[0]
    assert F.is_star_functor()


def test_marked_generator_needs_marked_image():
    P = FreeStarPresentation([0, 1], [("f", 0, 1, True)])
    U = classifier("unitary")
    with pytest.raises(IllTypedAssignment):
        free_star_evaluate(P, {0: U.mor_labels.index("u")}, U)
    M = classifier("marked_unitary")
    u = M.mor_labels.index("u")
    F = free_star_evaluate(P, {0: u}, M)
    f = P.word(0, [(0, False)])
    assert F(P.star(f)) == M.inverse(u)
    # f then f* reduces to the empty word
    assert P.compose(P.star(f), f) == P.identity(0)


def test_no_generators_gives_the_object_map():
    P = FreeStarPresentation([0, 1], [])
    F = free_star_evaluate(P, {}, BZ2, objects={0: 0, 1: 0})
    assert F.ob == (0, 0) and F(P.identity(1)) == BZ2.ident[0]


# linearization

def test_linearize_point():
    L = linearize(point())
    assert (L.n_obj, L.dim(0, 0)) == (1, 1)


def test_linearize_bz2_is_the_group_algebra():
    L = linearize(BZ2)
    e, s = L.basis_mor(0), L.basis_mor(1)
    assert L.dim(0, 0) == 2
    assert L.compose(s, s) == e and L.star(s) == s


@pytest.mark.parametrize("name", ["pt", "bz2", "marked_unitary", "disc2"])
def test_linearization_adjunction(corpus, name):
    A = corpus.categories[name]
    assert check_transport(A, linearize(BZ2))
    assert check_transport(A, linearize(A))
