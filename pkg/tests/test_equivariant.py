import pytest

from starcats.equivariant import (FinGroup, GAction, bg, build_gtilde, check_equivariant_exponential_law,
                                  check_injective_fibrancy, cocycles, cyclic, fixed_points,
                                  group_algebra_table, induction_value, linearize_action, orbit,
                                  orbit_colimit_certificate, orbit_cofibrancy_certificate,
                                  resolution, trivial_action, trivial_group)
from starcats.fincat import (CategoryError, Functor, discrete, find_isomorphism, indiscrete,
                             point)
from starcats.linear import linearize
from starcats.suites import fixed_point_actions

from conftest import brute_force_functors

Z2, Z3 = cyclic(2), cyclic(3)
BZ2 = bg(Z2)


# groups and actions

def test_group_tables_are_checked():
    with pytest.raises(CategoryError):
        FinGroup([0, 1], [[0, 1], [1, 1]])


def test_subgroup_embedding():
    Z4 = cyclic(4)
    H = Z4.subgroup([0, 2])
    assert H.order == 2 and H.embedding == (0, 2)
    with pytest.raises(CategoryError):
        Z4.subgroup([0, 1])


def test_action_axioms_are_checked():
    I = indiscrete(2)
    swap = Functor(I, I, [1, 0], [3, 2, 1, 0])
    ident = Functor(I, I, [0, 1], [0, 1, 2, 3])
    with pytest.raises(CategoryError):
        GAction(Z2, I, [swap, swap])
    assert GAction(Z2, I, [ident, swap])


# resolution

def test_gtilde_of_trivial_group_is_point():
    gt = build_gtilde(trivial_group())
    assert find_isomorphism(gt.base, point()) is not None


def test_gtilde_of_z2_is_interval_with_swap():
    gt = build_gtilde(Z2)
    assert find_isomorphism(gt.base, indiscrete(2)) is not None
    assert gt.maps[1].ob == (1, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gtilde_morphism_count(n):
    assert build_gtilde(cyclic(n)).base.n_mor == n * n


@pytest.mark.parametrize("G", [Z2, Z3])
def test_resolution_of_point(G):
    assert find_isomorphism(resolution(trivial_action(G, point())).category, point())


def test_resolution_of_discrete_pair():
    R = resolution(trivial_action(Z2, discrete(2))).category
    assert find_isomorphism(R, discrete(2)) is not None


def test_resolution_certificates_on_corpus(corpus):
    for name, act in fixed_point_actions(corpus).items():
        certs = resolution(act).certificates()
        assert all(certs.values()), (name, certs)


# fixed points

def test_fixed_points_of_point():
    assert find_isomorphism(fixed_points(trivial_action(Z2, point())).explicit, point())


def test_fixed_points_of_trivial_action_on_bz2():
    assert fixed_points(trivial_action(Z2, BZ2)).explicit.n_obj == 2


def test_fixed_points_agree_with_limit(corpus):
    for name, act in fixed_point_actions(corpus).items():
        assert fixed_points(act).is_isomorphism(), name


def test_cocycle_count_against_equivariant_functors(corpus):
    # objects of the fixed points are the equivariant functors G̃ -> A with
    # special images, found here by unrestricted brute force
    for name, act in corpus.actions.items():
        if act.base.n_mor > 4:
            continue
        gt = build_gtilde(act.group)
        Gt = gt.base.underlying()
        special = set(act.base.special_isos())
        count = 0
        for F in brute_force_functors(Gt, act.base.underlying()):
            if not all(m in special for m in F.mor):
                continue
            if all([F.ob[x] for x in gt.maps[g].ob] == [act.act_ob(g, y) for y in F.ob]
                   and [F.mor[m] for m in gt.maps[g].mor] == [act.act_mor(g, k) for k in F.mor]
                   for g in range(act.group.order)):
                count += 1
        assert len(cocycles(act)) == count, name


def test_cocycle_identities(corpus):
    for act in corpus.actions.values():
        G, A = act.group, act.base
        for b, rho in cocycles(act):
            assert rho[G.unit] == A.ident[b]
            for g in range(G.order):
                for h in range(G.order):
                    assert rho[G.mul[g][h]] == A.comp[(act.act_mor(g, rho[h]), rho[g])]


def test_intertwiners_closed_under_composition_and_star(corpus):
    for act in corpus.actions.values():
        F = fixed_points(act).explicit
        F.validate()
        assert all(F.star[f] is not None for f in range(F.n_mor))


def test_linear_fixed_points(corpus):
    act = linearize_action(corpus.actions["z2_trivial_pt"])
    fp = fixed_points(act)
    assert fp.is_isomorphism()
    assert fp.explicit.n_obj == 1


def test_injective_fibrancy(corpus):
    for name in ("z2_trivial_pt", "z2_swap_marked_unitary", "z2_swap_disc2"):
        res = resolution(corpus.actions[name])
        assert check_injective_fibrancy(res.action), name


def test_equivariant_exponential_law(corpus):
    for name in ("z2_trivial_pt", "z2_swap_marked_unitary", "z2_trivial_bz2"):
        for C in (point(), discrete(2)):
            v = check_equivariant_exponential_law(C, corpus.actions[name])
            assert v, name


# orbits

@pytest.mark.parametrize("G", [Z2, Z3, cyclic(4)])
def test_point_orbit_is_bg(G):
    assert find_isomorphism(orbit(point(), G), bg(G)) is not None


def test_group_algebra_orbit():
    T = orbit(linearize(point()), Z2)
    assert T.dim(0, 0) == 2
    table = group_algebra_table(Z2)
    for (h, g), vec in table.items():
        assert T.compose(T.basis_mor(h), T.basis_mor(g)).v == vec
    s = T.basis_mor(1)
    assert T.compose(s, s) == T.basis_mor(0)


def test_colimit_certificate_for_bz2():
    v = orbit_colimit_certificate(Z2, BZ2)
    assert v and v.witness == 2


def test_colimit_certificates_on_corpus_groupoids(corpus):
    for name, K in corpus.groupoids().items():
        for G in (Z2, Z3):
            assert orbit_colimit_certificate(G, K), (name, G.order)


def test_orbit_cofibrancy(corpus):
    triv = [F for F in corpus.functors.values() if F.dom.n_mor <= 4 and F.cod.n_mor <= 4
            and F.dom.marked is not None]
    from starcats.model import is_good
    from starcats.starcat import is_weak_equivalence
    triv = [F for F in triv if is_good(F) and is_weak_equivalence(F)]
    assert orbit_cofibrancy_certificate(point(), Z2, triv)


def test_induction_values():
    Z4 = cyclic(4)
    trivial = Z4.subgroup([0])
    C = indiscrete(2)
    assert find_isomorphism(induction_value(C, Z4, trivial), C) is not None
    whole = Z2.subgroup([0, 1])
    T = induction_value(linearize(point()), Z2, whole)
    assert T.dim(0, 0) == 2
    assert find_isomorphism(induction_value(point(), Z2, whole), BZ2) is not None
    with pytest.raises(CategoryError):
        induction_value(point(), Z2, Z2)
