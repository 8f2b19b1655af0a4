"""Model-structure predicates, lifting searches and the two factorizations.

Weak equivalences come from :mod:`starcats.starcat`; cofibrations are the
functors injective on objects; fibrations are checked two ways, through
the unitary lifting condition (``is_good``) and through exhaustive lifting
searches against a generated family of trivial cofibrations.
"""

from typing import NamedTuple

from .fincat import (DEFAULT_BOUND, FinCategory, Functor, Verdict, check_functor,
                     empty, identity_functor, indiscrete, iter_functors, point)
from .gtensor import sharp, sharp_map
from .linear import LinearStarCategory, LinFunctor, LinMor, check_linear_functor
from .starcat import is_weak_equivalence


def is_cofibration(F):
    """Injective on objects; witness is a pair of objects with the same image."""
    seen = {}
    for a, b in enumerate(F.ob):
        if b in seen:
            return Verdict(False, (seen[b], a))
        seen[b] = a
    return Verdict(True)


def _lifting_isos(C):
    return C.special_isos() if not isinstance(C, LinearStarCategory) else C.marked_list()


def is_good(F):
    """Every (marked) unitary u: F(c) -> d lifts to a (marked) unitary
    v: c -> c' with F(v) = u.  Witness: (c, u)."""
    C, D = F.dom, F.cod
    if isinstance(F, LinFunctor):
        lifted = {}
        for m in C.marked_list():
            lifted.setdefault(m.src, set()).add(F(m))
        for c in range(C.n_obj):
            for u in D.marked_list():
                if u.src == F.ob[c] and u not in lifted.get(c, ()):
                    return Verdict(False, (c, u))
        return Verdict(True)
    source = _lifting_isos(C)
    lifted = {}
    for v in source:
        lifted.setdefault(C.src[v], set()).add(F.mor[v])
    for c in range(C.n_obj):
        for u in _lifting_isos(D):
            if D.src[u] == F.ob[c] and u not in lifted.get(c, ()):
                return Verdict(False, (c, u))
    return Verdict(True)


# lifting

class LiftingProblem(NamedTuple):
    """A square top: A -> C, bottom: B -> D with f∘top = bottom∘i."""
    left: Functor
    right: Functor
    top: Functor
    bottom: Functor

    def commutes(self):
        return self.top.then(self.right) == self.left.then(self.bottom)


def solve_lifting(problem, bound=DEFAULT_BOUND):
    """First lift B -> C making both triangles commute, or None."""
    i, f, top, bottom = problem
    if not problem.commutes():
        raise ValueError("lifting square does not commute")
    B, C = i.cod, f.dom
    ob_c = [[c for c in range(C.n_obj) if f.ob[c] == bottom.ob[b]] for b in range(B.n_obj)]
    mor_c = [[g for g in range(C.n_mor) if f.mor[g] == bottom.mor[h]] for h in range(B.n_mor)]
    for a, b in enumerate(i.ob):
        ob_c[b] = [c for c in ob_c[b] if c == top.ob[a]]
    for g, h in enumerate(i.mor):
        mor_c[h] = [c for c in mor_c[h] if c == top.mor[g]]
    for lift in iter_functors(B, C, bound=bound, ob_candidates=ob_c, mor_candidates=mor_c):
        return lift
    return None


def lifting_squares(i, f, bound=DEFAULT_BOUND):
    """All commuting squares from i to f."""
    for top in iter_functors(i.dom, f.dom, bound=bound):
        want = [f.ob[c] for c in top.ob]
        ob_c = [None] * i.cod.n_obj
        for a, b in enumerate(i.ob):
            ob_c[b] = [want[a]]
        mor_c = [None] * i.cod.n_mor
        for g, h in enumerate(i.mor):
            mor_c[h] = [f.mor[top.mor[g]]]
        for bottom in iter_functors(i.cod, f.cod, bound=bound,
                                    ob_candidates=ob_c, mor_candidates=mor_c):
            yield LiftingProblem(i, f, top, bottom)


def _flavor(C):
    return (C.star is not None, C.marked is not None)


def _restyle(C, flavor):
    star, marked = flavor
    if not star:
        return C.underlying()
    return C.replace(marked=None) if not marked else C


def _restyle_functor(F, flavor):
    return Functor(_restyle(F.dom, flavor), _restyle(F.cod, flavor), F.ob, F.mor)


def inclusion_at(A, G, g=0, S=None):
    """A -> A♯G, x ↦ (x, g)."""
    S = S or sharp(A, G)
    return Functor(A, S, [S.oid[(a, g)] for a in range(A.n_obj)],
                   [S.mid[(f, G.ident[g])] for f in range(A.n_mor)])


def projection(A, G, S=None):
    """A♯G -> A."""
    S = S or sharp(A, G)
    return Functor(S, A, [a for a, _ in S.pairs], [f for f, _ in S.mor_pairs])


def trivial_cofibration_family(flavor=(True, True)):
    """Small trivial cofibrations used to probe fibrations: Δ⁰ -> Δ⁰♯𝕀,
    its cousins into larger indiscrete groupoids, and A -> A♯𝕀 for a few
    small A, all restyled to the requested flavour."""
    pt = point()
    family = []
    for n in (2, 3):
        family.append(Functor(pt, indiscrete(n), [0], [0]))
    I2, I3 = indiscrete(2), indiscrete(3)
    family.append(Functor(I2, I3, [0, 1], [0, 1, 3, 4]))
    for A in (indiscrete(2), _two_points()):
        family.append(inclusion_at(A, I2))
    family.append(Functor(empty(), empty(), [], []))
    out = []
    for F in family:
        assert is_cofibration(F) and is_weak_equivalence(F)
        out.append(_restyle_functor(F, flavor))
    return out


def _two_points():
    return FinCategory([0, 1], [("id0", 0, 0), ("id1", 1, 1)], [0, 1],
                       {(0, 0): 0, (1, 1): 1}, star=[0, 1], marked=[0, 1])


def is_fibration(f, family=None, bound=DEFAULT_BOUND):
    """Right lifting property against the trivial cofibration family.
    Witness: the unsolvable square."""
    family = family if family is not None else trivial_cofibration_family(_flavor(f.dom))
    for i in family:
        for sq in lifting_squares(i, f, bound=bound):
            if solve_lifting(sq, bound=bound) is None:
                return Verdict(False, sq)
    return Verdict(True)


# factorizations

class FactorizationResult(NamedTuple):
    middle: object
    first: object
    second: object
    certificates: dict

    def ok(self):
        return all(bool(v) for v in self.certificates.values())


def _marked_setting(F):
    if isinstance(F, LinFunctor):
        return True
    return F.dom.marked is not None and F.cod.marked is not None


def cylinder(a):
    """Z̃(a): objects Ob A ⊔ Ob B, Hom(x, y) = Hom_B(q x, q y), structure from B.

    Returns (Z, j, q, beta) with beta: B -> Z the inclusion of B.
    """
    if isinstance(a, LinFunctor):
        return _cylinder_linear(a)
    A, B = a.dom, a.cod
    objs = [("A", A.objects[x]) for x in range(A.n_obj)] + [("B", B.objects[y]) for y in range(B.n_obj)]
    q_ob = list(a.ob) + list(range(B.n_obj))
    n = len(objs)
    morphisms, index = [], {}
    for s in range(n):
        for t in range(n):
            for h in B.hom(q_ob[s], q_ob[t]):
                index[(s, t, h)] = len(morphisms)
                morphisms.append(((s, t, B.mor_labels[h]), s, t))
    q_mor = [None] * len(morphisms)
    for (s, t, h), k in index.items():
        q_mor[k] = h
    comp = {}
    for (s, t, h), k in index.items():
        for u in range(n):
            for h2 in B.hom(q_ob[t], q_ob[u]):
                comp[(index[(t, u, h2)], k)] = index[(s, u, B.comp[(h2, h)])]
    ident = [index[(s, s, B.ident[q_ob[s]])] for s in range(n)]
    star = None
    if B.star is not None:
        star = [index[(t, s, B.star[h])] for (s, t, h) in sorted(index, key=index.get)]
    marked = None
    if B.marked is not None:
        marked = [k for k, h in enumerate(q_mor) if h in B.marked]
    Z = FinCategory(objs, morphisms, ident, comp, star=star, marked=marked)
    Z.index, Z.q_ob, Z.q_mor = index, q_ob, q_mor
    nA = A.n_obj
    j = Functor(A, Z, range(nA), [index[(A.src[f], A.tgt[f], a.mor[f])] for f in range(A.n_mor)])
    q = Functor(Z, B, q_ob, q_mor)
    beta = Functor(B, Z, [nA + y for y in range(B.n_obj)],
                   [index[(nA + B.src[h], nA + B.tgt[h], h)] for h in range(B.n_mor)])
    return Z, j, q, beta


def _cylinder_linear(a):
    A, B = a.dom, a.cod
    nA = A.n_obj
    objs = [("A", A.objects[x]) for x in range(nA)] + [("B", B.objects[y]) for y in range(B.n_obj)]
    q_ob = list(a.ob) + list(range(B.n_obj))
    n = len(objs)
    basis, index, origin = [], {}, []
    for s in range(n):
        for t in range(n):
            for i in B.hom(q_ob[s], q_ob[t]):
                index[(s, t, i)] = len(basis)
                basis.append(((s, t, B.basis_labels[i]), s, t))
                origin.append(i)
    table = {}
    for (s, t, i), k in index.items():
        for u in range(n):
            for i2 in B.hom(q_ob[t], q_ob[u]):
                table[(index[(t, u, i2)], k)] = B.table[(i2, i)]
    star = [B.star_table[origin[k]] for k in range(len(basis))]
    ident = [B.ident[q_ob[s]] for s in range(n)]
    marked = None
    if B.marked is not None:
        marked = [LinMor(s, t, m.v) for s in range(n) for t in range(n)
                  for m in B.marked_in(q_ob[s], q_ob[t])]
    Z = LinearStarCategory(objs, basis, ident, table, star, marked)
    Z.q_ob = q_ob
    j = LinFunctor(A, Z, range(nA), [LinMor(A.bsrc[i], A.btgt[i], a.mor[i].v)
                                     for i in range(A.n_basis)])
    q = LinFunctor(Z, B, q_ob, [B.basis_mor(i) for i in origin])
    beta = LinFunctor(B, Z, [nA + y for y in range(B.n_obj)],
                      [LinMor(nA + B.bsrc[i], nA + B.btgt[i], B.basis_mor(i).v)
                       for i in range(B.n_basis)])
    return Z, j, q, beta


def cylinder_factorize(a):
    """a = q∘j with j a cofibration and q a trivial fibration."""
    Z, j, q, beta = cylinder(a)
    linear = isinstance(a, LinFunctor)
    check = check_linear_functor if linear else check_functor
    certs = {
        "j functor": check(j),
        "q functor": check(q),
        "composite": Verdict(j.then(q) == a),
        "j cofibration": is_cofibration(j),
        "q good": is_good(q),
        "q weak equivalence": is_weak_equivalence(q) if linear
        else is_weak_equivalence(q, _marked_setting(a)),
        "q surjective on objects": Verdict(set(q.ob) == set(range(a.cod.n_obj))),
    }
    return FactorizationResult(Z, j, q, certs)


def pushout_leg(a, Z, beta, I=None, S=None):
    """e: A♯𝕀 -> Z̃(a), (x,0) ↦ x, (x,1) ↦ a(x), (f, φ) ↦ a(f)."""
    A = a.dom
    I = I or indiscrete(2)
    S = S or sharp(A, I)
    nA = A.n_obj

    def place(x, g):
        return x if g == 0 else nA + a.ob[x]

    ob = [place(x, g) for x, g in S.pairs]
    mor = [Z.index[(place(A.src[f], I.src[p]), place(A.tgt[f], I.tgt[p]), a.mor[f])]
           for f, p in S.mor_pairs]
    return Functor(S, Z, ob, mor)


def check_cylinder_universal(a, D, bound=DEFAULT_BOUND):
    """Hom(Z̃(a), D) ≅ {(φ, ψ) : φ: A♯𝕀 -> D, ψ: B -> D, φ(-, 1) = ψ∘a}.

    Both directions of the correspondence are applied and the counts
    compared.  Witness: (|Hom(Z̃(a), D)|, number of compatible pairs).
    """
    A, B = a.dom, a.cod
    Z, j, q, beta = cylinder(a)
    I = indiscrete(2)
    S = sharp(A, I)
    e = pushout_leg(a, Z, beta, I, S)
    at1 = inclusion_at(A, I, 1, S)
    psis = list(iter_functors(B, D, bound=bound))
    pairs = set()
    for phi in iter_functors(S, D, bound=bound):
        restricted = at1.then(phi)
        for psi in psis:
            if a.then(psi) == restricted:
                pairs.add((phi, psi))
    chis = list(iter_functors(Z, D, bound=bound))
    image = set()
    for chi in chis:
        pair = (e.then(chi), beta.then(chi))
        if pair not in pairs:
            return Verdict(False, ("restriction leaves the fibre product", chi))
        if glue(a, Z, pair[0], pair[1], S) != chi:
            return Verdict(False, ("round trip", chi))
        image.add(pair)
    if image != pairs:
        return Verdict(False, ("not surjective", (len(chis), len(pairs))))
    return Verdict(True, (len(chis), len(pairs)))


def glue(a, Z, phi, psi, S):
    """The functor Z̃(a) -> D determined by a compatible pair (φ, ψ):
    h: s -> t goes to u_t⁻¹∘ψ(h)∘u_s with u_x = φ(id_x, 0→1) on A-objects
    and identities on B-objects."""
    A = a.dom
    D = psi.cod
    nA = A.n_obj
    I_mor01 = 1  # 0->1 in indiscrete(2)
    ob = [phi.ob[S.oid[(x, 0)]] for x in range(nA)] + list(psi.ob)
    u = [phi.mor[S.mid[(A.ident[x], I_mor01)]] for x in range(nA)] + \
        [D.ident[psi.ob[y]] for y in range(a.cod.n_obj)]
    mor = []
    for k in range(Z.n_mor):
        s, t = Z.src[k], Z.tgt[k]
        mid = D.comp[(psi.mor[Z.q_mor[k]], u[s])]
        mor.append(D.comp[(D.inverse(u[t]), mid)])
    return Functor(Z, D, ob, mor)


def path_object(a):
    """P(a): objects (w, x) with w: b -> a(x) a (marked) unitary of B,
    morphisms (η₀, f): (w, x) -> (w', x') with w'∘η₀ = a(f)∘w.

    Returns (P, j, p).
    """
    A, B = a.dom, a.cod
    isos = B.special_isos()
    objs = [(w, x) for x in range(A.n_obj) for w in isos if B.tgt[w] == a.ob[x]]
    oid = {o: k for k, o in enumerate(objs)}
    morphisms, index = [], {}
    for s, (w, x) in enumerate(objs):
        for t, (w2, x2) in enumerate(objs):
            for f in A.hom(x, x2):
                af = a.mor[f]
                for eta in B.hom(B.src[w], B.src[w2]):
                    if B.comp[(w2, eta)] == B.comp[(af, w)]:
                        index[(s, t, eta, f)] = len(morphisms)
                        morphisms.append(((s, t, B.mor_labels[eta], A.mor_labels[f]), s, t))
    keys = sorted(index, key=index.get)
    comp = {}
    out = {}
    for key in keys:
        out.setdefault(key[0], []).append(key)
    for (s, t, eta, f) in keys:
        for (_, u, eta2, f2) in out.get(t, ()):
            comp[(index[(t, u, eta2, f2)], index[(s, t, eta, f)])] = \
                index[(s, u, B.comp[(eta2, eta)], A.comp[(f2, f)])]
    ident = [index[(s, s, B.ident[B.src[w]], A.ident[x])] for s, (w, x) in enumerate(objs)]
    star = None
    if A.star is not None and B.star is not None:
        star = [index[(t, s, B.star[eta], A.star[f])] for (s, t, eta, f) in keys]
    marked = None
    if A.marked is not None and B.marked is not None:
        marked = [index[k] for k in keys if k[2] in B.marked and k[3] in A.marked]
    labels = [(B.mor_labels[w], A.objects[x]) for w, x in objs]
    P = FinCategory(labels, morphisms, ident, comp, star=star, marked=marked)
    P.pairs, P.oid, P.index = objs, oid, index
    j = Functor(A, P, [oid[(B.ident[a.ob[x]], x)] for x in range(A.n_obj)],
                [index[(oid[(B.ident[a.ob[A.src[f]]], A.src[f])],
                        oid[(B.ident[a.ob[A.tgt[f]]], A.tgt[f])], a.mor[f], f)]
                 for f in range(A.n_mor)])
    p = Functor(P, B, [B.src[w] for w, _ in objs], [k[2] for k in keys])
    return P, j, p


def path_unitary(a, P, s):
    """u(w, x) = (w, id_x): (w, x) -> j(x), the unitary witnessing that j is
    essentially surjective."""
    B = a.cod
    w, x = P.pairs[s]
    t = P.oid[(B.ident[a.ob[x]], x)]
    return P.index[(s, t, w, a.dom.ident[x])]


def path_lift(a, P, s, u):
    """Lift of u: p(c) -> b at c = (w, x): the target (w∘u⁻¹, x) and
    v = (u, id_x)."""
    B = a.cod
    w, x = P.pairs[s]
    target = P.oid[(B.comp[(w, B.inverse(u))], x)]
    return P.index[(s, target, u, a.dom.ident[x])]


def path_factorize(a):
    """a = p∘j with j a trivial cofibration and p a fibration."""
    if isinstance(a, LinFunctor):
        raise NotImplementedError("path factorization is built for finite categories")
    P, j, p = path_object(a)
    B = a.cod
    unit_ok = True
    for s in range(P.n_obj):
        k = path_unitary(a, P, s)
        if k not in P.special_isos():
            unit_ok = Verdict(False, ("u not unitary", s))
            break
    lift_ok = Verdict(True)
    for s, (w, x) in enumerate(P.pairs):
        for u in B.special_isos():
            if B.src[u] != B.src[w]:
                continue
            v = path_lift(a, P, s, u)
            if p.mor[v] != u or v not in P.special_isos():
                lift_ok = Verdict(False, (s, u))
                break
    certs = {
        "j functor": check_functor(j),
        "p functor": check_functor(p),
        "composite": Verdict(j.then(p) == a),
        "j cofibration": is_cofibration(j),
        "j weak equivalence": is_weak_equivalence(j, _marked_setting(a)),
        "unitaries u(w, x)": Verdict(bool(unit_ok), None if unit_ok is True else unit_ok.witness),
        "explicit lifts": lift_ok,
        "p good": is_good(p),
    }
    return FactorizationResult(P, j, p, certs)


# retracts and axioms

class RetractDiagram(NamedTuple):
    """f is a retract of g: r∘i = id on both ends and the squares commute."""
    f: Functor
    g: Functor
    i_dom: Functor
    r_dom: Functor
    i_cod: Functor
    r_cod: Functor

    def valid(self):
        return (self.i_dom.then(self.r_dom) == identity_functor(self.f.dom)
                and self.i_cod.then(self.r_cod) == identity_functor(self.f.cod)
                and self.i_dom.then(self.g) == self.f.then(self.i_cod)
                and self.r_dom.then(self.f) == self.g.then(self.r_cod))


def sharp_retract(f, G):
    """f as a retract of f♯G through the inclusion at object 0 and the projection."""
    ident = identity_functor(G)
    S, T = sharp(f.dom, G), sharp(f.cod, G)
    g = sharp_map(f, ident, S, T)
    return RetractDiagram(f, g, inclusion_at(f.dom, G, 0, S), projection(f.dom, G, S),
                          inclusion_at(f.cod, G, 0, T), projection(f.cod, G, T))


def _predicates(F):
    marked = _marked_setting(F)
    return {
        "cofibration": lambda: bool(is_cofibration(F)),
        "fibration": lambda: bool(is_good(F)),
        "weak equivalence": lambda: bool(is_weak_equivalence(F, marked)),
    }


def verify_axioms(morphisms, retracts=(), groupoids=(), groupoid_maps=(), objects=()):
    """Check the model axioms on a finite corpus; returns a JSON-ready report.

    * two out of three over all composable pairs of ``morphisms``;
    * retract closure over ``retracts``;
    * -♯G preserves cofibrations and trivial cofibrations (``groupoids``);
    * A♯u is a weak equivalence (and a cofibration when u is) for the
      groupoid maps u in ``groupoid_maps`` and the categories ``objects``;
    * every category in ``objects`` is fibrant and cofibrant.
    """
    report = {}
    failures = []
    checked = 0

    def weq(F):
        return bool(is_weak_equivalence(F, _marked_setting(F)))

    flags = [weq(f) for f in morphisms]
    for n1, f in enumerate(morphisms):
        for n2, g in enumerate(morphisms):
            if f.cod is not g.dom and f.cod.key() != g.dom.key():
                continue
            gf = Functor(f.dom, g.cod, [g.ob[x] for x in f.ob], [g.mor[x] for x in f.mor])
            triple = (flags[n1], flags[n2], weq(gf))
            checked += 1
            if sum(triple) == 2:
                failures.append([n1, n2, list(triple)])
    report["two out of three"] = {"ok": not failures, "checked": checked, "failures": failures}

    failures, checked = [], 0
    for n, d in enumerate(retracts):
        if not d.valid():
            failures.append([n, "not a retract diagram"])
            continue
        pf, pg = _predicates(d.f), _predicates(d.g)
        for name in pf:
            checked += 1
            if pg[name]() and not pf[name]():
                failures.append([n, name])
    report["retracts"] = {"ok": not failures, "checked": checked, "failures": failures}

    failures, checked = [], 0
    for n, f in enumerate(morphisms):
        cof = bool(is_cofibration(f))
        if not cof:
            continue
        triv = flags[n]
        for m, G in enumerate(groupoids):
            checked += 1
            g = sharp_map(f, identity_functor(G))
            if not is_cofibration(g) or (triv and not is_weak_equivalence(g, _marked_setting(g))):
                failures.append([n, m])
    report["sharp preserves cofibrations"] = {"ok": not failures, "checked": checked,
                                              "failures": failures}

    failures, checked = [], 0
    for n, A in enumerate(objects):
        for m, u in enumerate(groupoid_maps):
            checked += 1
            g = sharp_map(identity_functor(A), u)
            bad = is_weak_equivalence(u, True) and not is_weak_equivalence(g, _marked_setting(g))
            if is_cofibration(u) and not is_cofibration(g):
                bad = True
            if bad:
                failures.append([n, m])
    report["sharp with groupoid maps"] = {"ok": not failures, "checked": checked,
                                          "failures": failures}

    failures = []
    pt = point()
    for n, A in enumerate(objects):
        to_pt = Functor(A, _restyle(pt, _flavor(A)), [0] * A.n_obj, [0] * A.n_mor)
        from_empty = Functor(_restyle(empty(), _flavor(A)), A, [], [])
        if not is_good(to_pt) or not is_cofibration(from_empty):
            failures.append(n)
    report["fibrant and cofibrant"] = {"ok": not failures, "checked": len(objects),
                                       "failures": failures}
    report["ok"] = all(v["ok"] for v in report.values() if isinstance(v, dict))
    return report

