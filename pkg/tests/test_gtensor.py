import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starcats.equivariant import bg, cyclic
from starcats.fincat import (CategoryError, enumerate_functors, find_isomorphism,
                             identity_functor, indiscrete, point)
from starcats.gtensor import (GroupoidPresentation, MappingSpace, SimplicialSet,
                              check_exponential_law, exponential_inverse, exponential_transport,
                              fundamental_groupoid, funu, hom_sizes, nerve, sharp, sharp_map,
                              standard_simplex)
from starcats.linear import linearize
from starcats.model import is_cofibration
from starcats.starcat import classifier, is_weak_equivalence, represented_hom

from conftest import brute_force_functors, groupoids

I = indiscrete(2)
BZ2 = bg(cyclic(2))


# tensors

def test_point_sharp_interval_is_marked_interval():
    assert find_isomorphism(sharp(point(), I), classifier("marked_unitary")) is not None


def test_sharp_with_trivial_groupoid_is_identity(corpus):
    for C in corpus.categories.values():
        assert find_isomorphism(sharp(C, point()), C) is not None


def test_linear_point_tensor_bz2_is_group_algebra():
    T = sharp(linearize(point()), BZ2)
    e, s = T.basis_mor(0), T.basis_mor(1)
    assert T.dim(0, 0) == 2
    assert T.compose(s, s) == e and T.star(s) == s


def test_sharp_needs_a_groupoid():
    from starcats.fincat import walking_arrow
    with pytest.raises(CategoryError):
        sharp(point(), walking_arrow())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["pt", "bz2", "projection", "marked_unitary", "unitary_unmarked"]),
       groupoids())
def test_sharp_keeps_flavor(corpus, name, G):
    A = corpus.categories[name]
    S = sharp(A, G)
    S.validate()
    assert (S.star is None) == (A.star is None)
    assert (S.marked is None) == (A.marked is None)
    assert (S.n_obj, S.n_mor) == (A.n_obj * G.n_obj, A.n_mor * G.n_mor)


def test_sharp_preserves_cofibrations_and_weak_equivalences(corpus):
    for G in (I, BZ2):
        idG = identity_functor(G)
        for name, F in corpus.functors.items():
            if F.dom.n_mor > 4 or F.cod.n_mor > 4:
                continue
            image = sharp_map(F, idG)
            if is_cofibration(F):
                assert is_cofibration(image), name
            if is_weak_equivalence(F):
                assert is_weak_equivalence(image), name


# unitary functor categories

def test_funu_interval_into_point():
    assert find_isomorphism(funu(I, point()), point()) is not None


def test_funu_interval_objects_are_special_isos(corpus):
    for name, B in corpus.categories.items():
        if B.star is None:
            continue
        kind = "marked" if B.marked is not None else "unitary"
        assert funu(I, B).n_obj == len(represented_hom(kind, B).elements), name


def test_funu_bz2_bz2_has_two_objects():
    R = funu(BZ2, BZ2)
    assert R.n_obj == 2
    # brute force: group homomorphisms Z/2 -> Z/2
    assert len(brute_force_functors(BZ2, BZ2)) == 2


def test_funu_is_a_valid_marked_star_category(corpus):
    for name in ("bz2", "marked_unitary", "ind3", "disc2"):
        R = funu(I, corpus.categories[name])
        R.validate()


# exponential law

TRIPLES = [("pt", "ind2", "bz2"), ("pt", "ind2", "marked_unitary"), ("marked_unitary", "bz2", "bz2"),
           ("bz2", "bz2", "ind3"), ("disc2", "ind2", "marked_unitary"), ("bz2", "ind2", "pt")]


def _cat(corpus, name):
    return I if name == "ind2" else corpus.categories[name]


@pytest.mark.parametrize("triple", TRIPLES)
def test_exponential_law_counts_against_brute_force(corpus, triple):
    C, G, A = (_cat(corpus, x) for x in triple)
    v = check_exponential_law(C, G, A)
    assert v
    S = sharp(C, G)
    if A.n_mor ** S.n_mor <= 70000:
        assert v.witness == len(brute_force_functors(S, A))
    sizes = hom_sizes(C, G, A)
    assert sizes.left == sizes.right == v.witness


def test_point_recovers_special_isos(corpus):
    for name in ("bz2", "marked_unitary", "ind3", "partial_isometry"):
        A = corpus.categories[name]
        assert check_exponential_law(point(), I, A).witness == len(A.marked)


def test_identity_transports_to_the_tautological_functor():
    C, G = classifier("marked_unitary"), BZ2
    S = sharp(C, G)
    R = funu(G, S)
    Phi = identity_functor(S)
    Psi = exponential_transport(Phi, C, G, S, R)
    for c in range(C.n_obj):
        F = R.functors[Psi.ob[c]]
        assert list(F.ob) == [S.oid[(c, g)] for g in range(G.n_obj)]
    assert exponential_inverse(Psi, C, G, S, S) == Phi


def test_linear_exponential_law():
    L = linearize(point())
    A = linearize(BZ2)
    assert check_exponential_law(L, BZ2, A)
    assert check_exponential_law(linearize(classifier("marked_unitary")), I, A)


# fundamental groupoids

def test_pi_of_point_simplex():
    P = fundamental_groupoid(standard_simplex(0))
    for H in (BZ2, I, indiscrete(3)):
        assert len(P.hom_into(H)) == H.n_obj


def test_pi_of_one_simplex_counts_like_interval(corpus):
    P = fundamental_groupoid(standard_simplex(1))
    for name, H in corpus.groupoids().items():
        assert len(P.hom_into(H)) == len(brute_force_functors(I.underlying(), H.underlying()))


def test_nerve_of_bz2_maps_onto_group_homs():
    homs = GroupoidPresentation(nerve(BZ2)).hom_into(BZ2)
    assert len(homs) == 2


def test_pi_of_nerve_recovers_small_groupoids(corpus):
    for name, H in corpus.groupoids().items():
        if not 0 < H.n_obj <= 2:
            continue
        P = GroupoidPresentation(nerve(H))
        for K in corpus.groupoids().values():
            assert len(P.hom_into(K)) == len(enumerate_functors(H.underlying(), K.underlying()))


def test_simplicial_set_round_trip_and_validation():
    K = nerve(BZ2)
    L = SimplicialSet.from_json(K.to_json())
    assert L.to_json() == K.to_json()
    # a triangle whose faces do not meet at shared vertices
    bad = standard_simplex(1).to_json()
    bad["s2"] = [{"id": "x", "d0": "01", "d1": "00", "d2": "11"}]
    with pytest.raises(CategoryError):
        SimplicialSet.from_json(bad)


# mapping spaces

def test_vertices_of_map_from_point(corpus):
    for B in corpus.categories.values():
        M = MappingSpace(point(), B)
        assert len(M.simplices(0)) == B.n_obj
        assert len(M.simplices(1)) == len(B.special_isos())


@pytest.mark.parametrize("pair", [("pt", "bz2"), ("marked_unitary", "bz2"), ("bz2", "ind3")])
def test_simplicial_identities(corpus, pair):
    A, B = (corpus.categories[x] for x in pair)
    assert MappingSpace(A, B).check_identities(top=2)
