"""Verification suites run by ``starcats verify-suite`` and the acceptance tests.

Each suite takes a :class:`~starcats.corpus.Corpus` and :class:`Limits`
and returns a list of :class:`Check` records in a deterministic order.
A corpus without categories yields no checks at all.
"""

import random
from typing import NamedTuple

from . import controlled as ctl
from .equivariant import (GAction, bg, check_injective_fibrancy, cyclic,
                          fixed_points, group_algebra_table, linearize_action,
                          orbit, orbit_colimit_certificate, orbit_cofibrancy_certificate)
from .fincat import (DEFAULT_BOUND, Functor, find_isomorphism, indiscrete,
                     iter_functors, point)
from .gtensor import (GroupoidPresentation, MappingSpace, check_exponential_law, nerve,
                      standard_simplex)
from .linear import linearize
from .model import (check_cylinder_universal, cylinder_factorize, is_fibration, is_good,
                    path_factorize, sharp_retract, verify_axioms)
from .starcat import check_representability, is_weak_equivalence, weak_equivalence_by_search


class Limits(NamedTuple):
    max_objects: int = 4
    max_morphisms: int = 16
    word_length: int = 6
    bound: int = DEFAULT_BOUND
    seed: int = 0


class Check(NamedTuple):
    name: str
    ok: bool
    witness: object = None


def _fits(C, limits):
    return C.n_obj <= limits.max_objects and C.n_mor <= limits.max_morphisms


def _flavor(C):
    return (C.star is not None, C.marked is not None)


def _verdict(name, v):
    return Check(name, bool(v), v.witness)


def representability(corpus, limits):
    out = []
    for name, B in sorted(corpus.categories.items()):
        if not _fits(B, limits) or B.star is None:
            continue
        kinds = ["object", "unitary"] + (["marked"] if B.marked is not None else [])
        for kind in kinds:
            out.append(_verdict(f"{name}: Hom({kind} classifier, B)",
                                check_representability(kind, B, limits.bound)))
        v = check_representability("morphism", B, limits.bound, limits.word_length)
        out.append(_verdict(f"{name}: Hom(morphism classifier, B)", v))
    return out


def equivalence(corpus, limits):
    out = []
    for name, F in sorted(corpus.functors.items()):
        if not (_fits(F.dom, limits) and _fits(F.cod, limits)):
            continue
        lemma = is_weak_equivalence(F)
        search = weak_equivalence_by_search(F, bound=limits.bound)
        out.append(Check(f"{name}: lemma route agrees with search", bool(lemma) == bool(search),
                         [bool(lemma), bool(search)]))
    return out


def exponential_triples(corpus, limits, count=12):
    """Finite triples (C, G, A) of small marked corpus categories, sampled
    deterministically from ``limits.seed``."""
    small = {k: C for k, C in sorted(corpus.categories.items())
             if C.marked is not None and C.n_obj <= 2 and C.n_mor <= 4}
    groupoids = {k: C for k, C in small.items() if C.is_groupoid() and C.n_obj > 0}
    triples = [(c, g, a) for c in small for g in groupoids for a in small]
    rng = random.Random(limits.seed)
    rng.shuffle(triples)
    return sorted(triples[:count])


def linear_triples(corpus, limits, count=4):
    """Linear triples: C a marked groupoid (so every basis element of Lin(C)
    is marked and the enumeration is exact), A with at most 2 objects."""
    cats = {k: C for k, C in sorted(corpus.categories.items())
            if C.marked is not None and C.n_obj <= 2 and C.n_mor <= 4 and C.n_obj > 0}
    groupoids = {k: C for k, C in cats.items() if C.is_groupoid()}
    all_marked = {k: C for k, C in groupoids.items() if len(C.marked) == C.n_mor}
    triples = [(c, g, a) for c in all_marked for g in groupoids for a in cats
               if cats[a].n_mor <= 2 or g == "pt"]
    rng = random.Random(limits.seed + 1)
    rng.shuffle(triples)
    return sorted(triples[:count])


def exponential_law(corpus, limits):
    out = []
    cats = corpus.categories
    for c, g, a in exponential_triples(corpus, limits):
        v = check_exponential_law(cats[c], cats[g], cats[a], limits.bound)
        out.append(_verdict(f"sharp: ({c}, {g}, {a})", v))
    for c, g, a in linear_triples(corpus, limits):
        v = check_exponential_law(linearize(cats[c]), cats[g], linearize(cats[a]), limits.bound)
        out.append(_verdict(f"tensor: (Lin {c}, {g}, Lin {a})", v))
    return out


def factorization(corpus, limits):
    out = []
    targets = {k: D for k, D in sorted(corpus.categories.items())
               if D.n_obj <= 3 and D.n_mor <= 9}
    for name, F in sorted(corpus.functors.items()):
        if not (_fits(F.dom, limits) and _fits(F.cod, limits)):
            continue
        cyl = cylinder_factorize(F)
        bad = [k for k, v in cyl.certificates.items() if not v]
        out.append(Check(f"{name}: cylinder factorization", not bad, bad))
        path = path_factorize(F)
        bad = [k for k, v in path.certificates.items() if not v]
        out.append(Check(f"{name}: path factorization", not bad, bad))
        for dname, D in targets.items():
            if _flavor(D) != _flavor(F.cod):
                continue
            v = check_cylinder_universal(F, D, limits.bound)
            out.append(_verdict(f"{name}: cylinder universal property against {dname}", v))
    return out


def _groupoid_maps():
    pt, I2, I3 = point(), indiscrete(2), indiscrete(3)
    return [Functor(pt, I2, [0], [0]), Functor(I2, pt, [0, 0], [0] * 4),
            Functor(I2, I3, [0, 1], [0, 1, 3, 4]), Functor(I2, I2, [1, 0], [3, 2, 1, 0]),
            Functor(I3, I2, [0, 1, 1], [0, 1, 1, 2, 3, 3, 2, 3, 3])]


def model(corpus, limits):
    if not corpus.categories:
        return []
    out = []
    functors = [F for _, F in sorted(corpus.functors.items())
                if _fits(F.dom, limits) and _fits(F.cod, limits)]
    retracts = []
    for name, F in sorted(corpus.functors.items()):
        if F.dom.n_mor <= 4 and F.cod.n_mor <= 4:
            retracts.append(sharp_retract(F, indiscrete(2)))
            retracts.append(sharp_retract(F, bg(cyclic(2))))
    objects = [C for _, C in sorted(corpus.categories.items()) if _fits(C, limits)]
    groupoids = [indiscrete(2), bg(cyclic(2))]
    report = verify_axioms(functors, retracts, groupoids, _groupoid_maps(),
                           [C for C in objects if C.n_mor <= 4])
    for key in sorted(k for k in report if k != "ok"):
        entry = report[key]
        out.append(Check(f"axioms: {key} ({entry['checked']} checked)", entry["ok"],
                         entry["failures"]))
    out.append(Check("axioms: retract diagrams supplied", len(retracts) >= 5, len(retracts)))
    for name, F in sorted(corpus.functors.items()):
        if not (_fits(F.dom, limits) and _fits(F.cod, limits)):
            continue
        good, fib = is_good(F), is_fibration(F, bound=limits.bound)
        out.append(Check(f"{name}: fibration iff good", bool(good) == bool(fib),
                         [bool(good), bool(fib)]))
    return out


def fixed_point_actions(corpus):
    """Corpus actions plus their linearizations (bases with at most two
    objects) and a plain restyling of the Z/2 swap."""
    acts = dict(sorted(corpus.actions.items()))
    for name, act in sorted(corpus.actions.items()):
        if act.base.n_obj <= 2 and act.base.marked is not None and act.group.order == 2:
            acts[f"{name}_linear"] = linearize_action(act)
    if "z2_swap_marked_unitary" in corpus.actions:
        act = corpus.actions["z2_swap_marked_unitary"]
        U = act.base.underlying()
        acts["z2_swap_plain"] = GAction(act.group, U, [Functor(U, U, F.ob, F.mor)
                                                       for F in act.maps])
    return acts


def fixed_points_suite(corpus, limits):
    out = []
    for name, act in fixed_point_actions(corpus).items():
        fp = fixed_points(act, limits.bound)
        out.append(_verdict(f"{name}: fixed points ≅ invariant limit", fp.is_isomorphism()))
        for key, v in sorted(fp.resolution.certificates().items()):
            out.append(_verdict(f"{name}: resolution {key}", v))
        out.append(_verdict(f"{name}: resolution injectively fibrant",
                            check_injective_fibrancy(fp.resolution.action, bound=limits.bound)))
    return out


def orbits(corpus, limits):
    if not corpus.categories:
        return []
    out = []
    groupoids = {k: C for k, C in sorted(corpus.categories.items())
                 if C.is_groupoid() and _fits(C, limits)}
    for G in (cyclic(2), cyclic(3)):
        for name, K in groupoids.items():
            out.append(_verdict(f"Z/{G.order}: colimit certificate for {name}",
                                orbit_colimit_certificate(G, K, limits.bound)))
        iso = find_isomorphism(orbit(point(), G), bg(G))
        out.append(Check(f"Z/{G.order}: pt♯BG ≅ BG", iso is not None))
    trivial_fibrations = [F for _, F in sorted(corpus.functors.items())
                          if F.dom.marked is not None and F.dom.n_mor <= 4
                          and is_good(F) and is_weak_equivalence(F)]
    for name in ("pt", "disc2"):
        if name in corpus.categories:
            C = corpus.categories[name]
            v = orbit_cofibrancy_certificate(C, cyclic(2), trivial_fibrations, limits.bound)
            out.append(_verdict(f"{name}♯G̃ cofibrancy", v))
    out.append(group_algebra_check())
    return out


def group_algebra_check(G=None):
    """End(Lin(pt) ⊗ BG) against the structure constants of Q(i)[G]."""
    G = G or cyclic(2)
    T = orbit(linearize(point()), G)
    n = G.order
    dim = T.dim(0, 0)
    oracle = group_algebra_table(G)
    ok = dim == n
    if ok:
        for (h, g), vec in oracle.items():
            if T.compose(T.basis_mor(h), T.basis_mor(g)).v != vec:
                ok = False
    return Check(f"End(Lin(pt) ⊗ BZ/{n}) is the group algebra", ok, dim)


def controlled_suite(corpus, limits):
    out = []
    for name, X in sorted(corpus.spaces.items()):
        V = ctl.build_vplus(X, 2, limits.bound)
        bad = [o.labels for o in V.controlled if not ctl.check_measure(X, o.size, o.measure)]
        out.append(Check(f"{name}: measure axioms", not bad, bad))
        bad = []
        for (s, t, R) in V.relations:
            a, b = V.controlled[s], V.controlled[t]
            for U in (X.diag(), X.maximal, _support(R, a, b)):
                if bool(ctl.is_controlled(R, a, b, U)) != ctl.controlled_by(R, a, b, U):
                    bad.append((s, t, sorted(R)))
        out.append(Check(f"{name}: separated-pair control agrees with pointwise control",
                         not bad, bad[:3]))
        bad = []
        for (s, t, R) in V.relations:
            a, b = V.controlled[s], V.controlled[t]
            U = _support(R, a, b)
            if not ctl.controlled_by(ctl.transpose(R), b, a, ctl.transpose(U)):
                bad.append(("transpose", s, t))
            for (s2, u, R2) in V.relations:
                if s2 != t:
                    continue
                c = V.controlled[u]
                W = ctl.compose(_support(R2, b, c), U)
                if not ctl.controlled_by(ctl.compose(R2, R), a, c, W):
                    bad.append(("composite", s, t, u))
        out.append(Check(f"{name}: control composes and transposes", not bad, bad[:3]))
        marked = [k for k in sorted(V.marked)]
        closed = all(V.star[k] in V.marked for k in marked) and all(
            V.comp[(g, f)] in V.marked for f in marked for g in marked if (g, f) in V.comp)
        unitary = all(V.is_unitary(k) for k in marked)
        out.append(Check(f"{name}: marked morphisms closed and unitary", closed and unitary))
        if X.group is not None and X.group.is_abelian():
            E = ctl.equivariant_vplus(X, 2, limits.bound)
            out.append(_verdict(f"{name}: equivariant V⁺ ≅ fixed points of V⁺", E.check_agreement()))
    return out


def _support(R, a, b):
    return frozenset((b.labels[y], a.labels[x]) for y, x in R)


def pi_suite(corpus, limits):
    if not corpus.categories:
        return []
    out = []
    groupoids = {k: C for k, C in sorted(corpus.categories.items())
                 if C.is_groupoid() and _fits(C, limits)}
    d0, d1 = GroupoidPresentation(standard_simplex(0)), GroupoidPresentation(standard_simplex(1))
    pt, I = point().underlying(), indiscrete(2).underlying()
    for name, K in groupoids.items():
        Kp = K.underlying()
        n0 = len(d0.hom_into(Kp, limits.bound))
        m0 = sum(1 for _ in iter_functors(pt, Kp, bound=limits.bound))
        out.append(Check(f"Π(Δ⁰) vs pt into {name}", n0 == m0, [n0, m0]))
        n1 = len(d1.hom_into(Kp, limits.bound))
        m1 = sum(1 for _ in iter_functors(I, Kp, bound=limits.bound))
        out.append(Check(f"Π(Δ¹) vs 𝕀 into {name}", n1 == m1, [n1, m1]))
    B2 = bg(cyclic(2)).underlying()
    homs = GroupoidPresentation(nerve(B2)).hom_into(B2, limits.bound)
    out.append(Check("hom_into(N(BZ₂) -> BZ₂)", len(homs) == 2, len(homs)))
    for name, H in groupoids.items():
        if H.n_obj > 2 or H.n_obj == 0:
            continue
        P = GroupoidPresentation(nerve(H.underlying()))
        for tname, K in groupoids.items():
            a = len(P.hom_into(K.underlying(), limits.bound))
            b = sum(1 for _ in iter_functors(H.underlying(), K.underlying(), bound=limits.bound))
            out.append(Check(f"Π(N({name})) vs {name} into {tname}", a == b, [a, b]))
    for name in ("pt", "marked_unitary", "bz2"):
        if name in corpus.categories:
            M = MappingSpace(corpus.categories[name], corpus.categories[name], limits.bound)
            out.append(_verdict(f"Map({name}, {name}) simplicial identities", M.check_identities()))
    return out


SUITES = {
    "representability": representability,
    "equivalence": equivalence,
    "exponential-law": exponential_law,
    "factorization": factorization,
    "model": model,
    "fixed-points": fixed_points_suite,
    "orbit": orbits,
    "controlled": controlled_suite,
    "pi": pi_suite,
}


def run_suite(name, corpus, limits=Limits()):
    return SUITES[name](corpus, limits)
