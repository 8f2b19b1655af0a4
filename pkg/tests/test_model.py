import pytest

from starcats.equivariant import bg, cyclic
from starcats.fincat import (FinCategory, Functor, discrete, find_isomorphism, identity_functor,
                             indiscrete, point)
from starcats.model import (LiftingProblem, check_cylinder_universal, cylinder,
                            cylinder_factorize, is_cofibration, is_fibration, is_good,
                            lifting_squares, path_factorize, path_lift, path_object,
                            sharp_retract, solve_lifting, trivial_cofibration_family,
                            verify_axioms)
from starcats.starcat import classifier, is_weak_equivalence, marked_subcategory, plus_functor

I = indiscrete(2)
BZ2 = bg(cyclic(2))
U = classifier("marked_unitary")


def _small(F, limit=6):
    return F.dom.n_mor <= limit and F.cod.n_mor <= limit


# cofibrations and good morphisms

def test_cofibration_examples():
    assert is_cofibration(identity_functor(I))
    assert not is_cofibration(Functor(discrete(2), point(), [0, 0], [0, 0]))
    assert is_cofibration(Functor(point(), U, [0], [0]))


def test_maps_to_the_point_are_good(corpus):
    for C in corpus.categories.values():
        pt = point() if C.marked is not None else point().replace(marked=None)
        if C.star is None:
            pt = pt.underlying()
        assert is_good(Functor(C, pt, [0] * C.n_obj, [0] * C.n_mor))


def test_point_into_interval_is_not_good():
    v = is_good(Functor(point(), U, [0], [0]))
    assert not v
    c, u = v.witness
    assert c == 0 and U.mor_labels[u] == "u"


def test_fibration_iff_good_on_corpus(corpus):
    for name, F in corpus.functors.items():
        assert bool(is_fibration(F)) == bool(is_good(F)), name


# lifting

def test_point_into_interval_lifts_against_good_maps(corpus):
    i = Functor(point(), U, [0], [0])
    for name, F in corpus.functors.items():
        if F.dom.marked is None or not _small(F) or not is_good(F):
            continue
        for sq in lifting_squares(i, F):
            assert solve_lifting(sq) is not None, name


def test_trivial_cofibrations_lift_against_good_maps(corpus):
    family = trivial_cofibration_family()
    goods = [F for F in corpus.functors.values()
             if F.dom.marked is not None and _small(F, 4) and is_good(F)]
    for i in family:
        for F in goods:
            for sq in lifting_squares(i, F):
                assert solve_lifting(sq) is not None


def test_identity_square_has_identity_lift():
    idI = identity_functor(I)
    sq = LiftingProblem(idI, idI, idI, idI)
    assert solve_lifting(sq) == idI


def test_non_commuting_square_is_rejected():
    idI = identity_functor(I)
    swap = Functor(I, I, [1, 0], [3, 2, 1, 0])
    with pytest.raises(ValueError):
        solve_lifting(LiftingProblem(idI, idI, idI, swap))


# cylinder

def test_cylinder_of_identity_on_point():
    Z, j, q, beta = cylinder(identity_functor(point()))
    assert find_isomorphism(Z, I) is not None
    assert q.ob == (0, 0) and j.ob == (0,)


def test_cylinder_of_point_into_interval():
    a = Functor(point(), U, [0], [0])
    r = cylinder_factorize(a)
    assert r.middle.n_obj == 3
    assert r.first.then(r.second) == a
    assert r.ok()


def test_cylinder_factorization_on_corpus(corpus):
    for name, a in corpus.functors.items():
        r = cylinder_factorize(a)
        assert r.ok(), (name, {k: v for k, v in r.certificates.items() if not v})


def test_cylinder_projection_is_a_trivial_fibration(corpus):
    for name, a in corpus.functors.items():
        Z, j, q, beta = cylinder(a)
        B = a.cod
        assert set(q.ob) == set(range(B.n_obj))
        for s in range(Z.n_obj):
            for t in range(Z.n_obj):
                images = [q.mor[k] for k in Z.hom(s, t)]
                assert sorted(images) == sorted(B.hom(q.ob[s], q.ob[t])), name
        if Z.marked is not None:
            qp = plus_functor(q)
            Zp, Bp = marked_subcategory(Z), marked_subcategory(B)
            for s in range(Zp.n_obj):
                for t in range(Zp.n_obj):
                    images = [qp.mor[k] for k in Zp.hom(s, t)]
                    assert sorted(images) == sorted(Bp.hom(qp.ob[s], qp.ob[t])), name


@pytest.mark.parametrize("name", ["pt_to_marked_unitary", "bz2_to_pt", "id_disc2",
                                  "disc2_to_marked_unitary"])
def test_cylinder_universal_property(corpus, name):
    a = corpus.functors[name]
    for D in (BZ2, U, indiscrete(3), discrete(2)):
        v = check_cylinder_universal(a, D)
        assert v and v.witness[0] == v.witness[1]


# path object

def test_path_object_of_identity_on_point():
    P, j, p = path_object(identity_functor(point()))
    assert find_isomorphism(P, point()) is not None


def test_path_object_of_point_into_bz2():
    a = Functor(point(), BZ2, [0], [0])
    P, j, p = path_object(a)
    assert [w for w, _ in P.pairs] == [0, 1]


def test_path_factorization_on_corpus(corpus):
    for name, a in corpus.functors.items():
        r = path_factorize(a)
        assert r.ok(), (name, {k: v for k, v in r.certificates.items() if not v})
        assert is_weak_equivalence(r.first) and is_good(r.second)


def test_path_lift_lands_over_the_unitary():
    a = Functor(point(), BZ2, [0], [0])
    P, j, p = path_object(a)
    for s in range(P.n_obj):
        for u in BZ2.special_isos():
            v = path_lift(a, P, s, u)
            assert p.mor[v] == u and P.src[v] == s


# axioms

def test_axioms_on_corpus(corpus):
    morphisms = [F for F in corpus.functors.values() if _small(F, 9)]
    retracts = [sharp_retract(F, G) for F in morphisms if _small(F, 4) for G in (I, BZ2)]
    assert len(retracts) >= 5 and all(d.valid() for d in retracts)
    report = verify_axioms(morphisms, retracts, [I, BZ2], [Functor(point(), I, [0], [0])],
                           [C for C in corpus.categories.values() if C.n_mor <= 4])
    assert report["ok"], report


def test_two_out_of_three_with_non_equivalences():
    # collapse∘inc is the identity, inc∘collapse is not an equivalence
    collapse = Functor(discrete(2), point(), [0, 0], [0, 0])
    inc = Functor(point(), discrete(2), [0], [0])
    report = verify_axioms([collapse, inc])
    assert report["two out of three"]["ok"]
    assert report["two out of three"]["checked"] == 2


def test_every_object_fibrant_and_cofibrant(corpus):
    report = verify_axioms([], objects=list(corpus.categories.values()))
    assert report["fibrant and cofibrant"]["ok"]
    assert report["fibrant and cofibrant"]["checked"] == len(corpus.categories)


def test_retract_of_good_map_is_good():
    f = Functor(BZ2, point(), [0], [0, 0])
    d = sharp_retract(f, I)
    assert d.valid() and is_good(d.g) and is_good(d.f)


def test_unmarked_cylinder_keeps_flavor():
    a = Functor(point().replace(marked=None), classifier("unitary").replace(marked=None),
                [0], [0])
    r = cylinder_factorize(a)
    assert r.middle.marked is None and r.middle.star is not None
    assert r.ok()


def test_fibration_check_sees_missing_lift():
    a = Functor(point(), U, [0], [0])
    v = is_fibration(a)
    assert not v and isinstance(v.witness, LiftingProblem)


def test_path_and_cylinder_preserve_types():
    a = Functor(BZ2, point(), [0], [0, 0])
    assert isinstance(cylinder(a)[0], FinCategory)
    assert path_factorize(a).ok()
