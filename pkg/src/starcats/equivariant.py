"""Finite group actions, the resolution G̃, homotopy fixed points and orbits.

Fixed points are described by cocycles: an object is (b, ρ) with
ρ(g): b -> g(b) a (marked) unitary and ρ(gh) = g(ρ(h))∘ρ(g).  The same
category is obtained as the strict invariants of the G-action on
funu(G̃, A), and :func:`fixed_points` builds the comparison functor
between the two.
"""

from itertools import product as cartesian

from .fincat import (DEFAULT_BOUND, CategoryError, FinCategory, Functor, Verdict,
                     check_functor, finite_limit, identity_functor, indiscrete,
                     iter_functors)
from .gtensor import exponential_inverse, exponential_transport, funu, sharp
from .linear import (LinearStarCategory, LinFunctor, LinMor, build_from_ambient,
                     check_linear_functor, enumerate_linear_functors, linearize)
from .scalars import nullspace, rank, vsub, vunit
from .starcat import is_weak_equivalence


class FinGroup:
    """A finite group given by its multiplication table; ``mul[g][h]`` is gh."""

    def __init__(self, elements, mul):
        self.elements = tuple(elements)
        self.mul = tuple(tuple(row) for row in mul)
        n = len(self.elements)
        if len(self.mul) != n or any(len(r) != n for r in self.mul):
            raise CategoryError("multiplication table has the wrong shape", None)
        units = [e for e in range(n) if all(self.mul[e][g] == g == self.mul[g][e] for g in range(n))]
        if not units:
            raise CategoryError("no unit element", None)
        self.unit = units[0]
        for a, b, c in cartesian(range(n), repeat=3):
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise CategoryError("multiplication is not associative", (a, b, c))
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if self.mul[g][h] == self.unit]
            if not hs:
                raise CategoryError("element without inverse", g)
            inv.append(hs[0])
        self.inv = tuple(inv)

    @property
    def order(self):
        return len(self.elements)

    def is_abelian(self):
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(n))

    def subgroup(self, members):
        """Subgroup on the given element indices; ``.embedding`` maps back."""
        members = sorted(set(members))
        pos = {g: k for k, g in enumerate(members)}
        try:
            mul = [[pos[self.mul[a][b]] for b in members] for a in members]
        except KeyError:
            raise CategoryError("subset is not closed under multiplication", members) from None
        H = FinGroup([self.elements[g] for g in members], mul)
        if members[H.unit] != self.unit:
            raise CategoryError("subset does not contain the unit", members)
        H.embedding = tuple(members)
        return H

    def to_json(self):
        return {"elements": [str(g) for g in self.elements], "table": [list(r) for r in self.mul]}

    @classmethod
    def from_json(cls, data):
        return cls(data["elements"], data["table"])


def cyclic(n):
    return FinGroup(range(n), [[(a + b) % n for b in range(n)] for a in range(n)])


def trivial_group():
    return cyclic(1)


def bg(G, marked="all"):
    """One-object groupoid BG: composition h∘g = hg, star = inverse."""
    n = G.order
    mk = {"all": range(n), "identities": [G.unit], None: None}[marked]
    return FinCategory(["*"], [(G.elements[g], 0, 0) for g in range(n)], [G.unit],
                       {(h, g): G.mul[h][g] for g in range(n) for h in range(n)},
                       star=G.inv, marked=mk)


class GAction:
    """Strict action of G on a category: one automorphism per element.

    ``maps[g]`` is a :class:`Functor` (or :class:`LinFunctor` for linear
    bases) from the base to itself.
    """

    def __init__(self, group, base, maps, check=True):
        self.group = group
        self.base = base
        self.maps = tuple(maps)
        self.linear = isinstance(base, LinearStarCategory)
        if check:
            self.validate()

    def act_ob(self, g, x):
        return self.maps[g].ob[x]

    def act_mor(self, g, f):
        """Image of a morphism index (finite) or of an element (linear)."""
        return self.maps[g](f) if self.linear else self.maps[g].mor[f]

    def validate(self):
        G, A = self.group, self.base
        if len(self.maps) != G.order:
            raise CategoryError("one automorphism per group element is needed", None)
        check = check_linear_functor if self.linear else check_functor
        ident = _identity(A)
        for g, F in enumerate(self.maps):
            v = check(F)
            if not v:
                raise CategoryError(f"action of {G.elements[g]} is not a functor", v.witness)
            if sorted(F.ob) != list(range(A.n_obj)):
                raise CategoryError(f"action of {G.elements[g]} is not bijective", g)
        if self.maps[G.unit] != ident:
            raise CategoryError("unit does not act as the identity", G.unit)
        for g in range(G.order):
            for h in range(G.order):
                # (gh)(x) = g(h(x))
                if self.maps[h].then(self.maps[g]) != self.maps[G.mul[g][h]]:
                    raise CategoryError("action is not multiplicative", (g, h))
        return self

    def is_equivariant(self, F, other):
        """F: self.base -> other.base commutes with the two actions."""
        return all(F.then(other.maps[g]) == self.maps[g].then(F) for g in range(self.group.order))

    def to_json(self):
        A = self.base
        data = {"group": self.group.to_json(), "on_objects": {}, "on_morphisms": {}}
        for g, F in enumerate(self.maps):
            key = str(self.group.elements[g])
            data["on_objects"][key] = {str(A.objects[x]): str(A.objects[F.ob[x]])
                                       for x in range(A.n_obj)}
            if not self.linear:
                data["on_morphisms"][key] = {str(A.mor_labels[f]): str(A.mor_labels[F.mor[f]])
                                             for f in range(A.n_mor)}
            else:
                data["on_morphisms"][key] = {str(A.basis_labels[i]): [str(c) for c in F.mor[i].v]
                                             for i in range(A.n_basis)}
        return data


def action_from_json(base, data):
    """Inverse of :meth:`GAction.to_json` for finite bases."""
    G = FinGroup.from_json(data["group"])
    ol = {str(x): k for k, x in enumerate(base.objects)}
    ml = {str(x): k for k, x in enumerate(base.mor_labels)}
    maps = []
    for g in G.elements:
        obs, mors = data["on_objects"][str(g)], data["on_morphisms"][str(g)]
        maps.append(Functor(base, base, [ol[obs[str(x)]] for x in base.objects],
                            [ml[mors[str(f)]] for f in base.mor_labels]))
    return GAction(G, base, maps)


def _identity(A):
    if isinstance(A, LinearStarCategory):
        return LinFunctor(A, A, range(A.n_obj), [A.basis_mor(i) for i in range(A.n_basis)])
    return identity_functor(A)


def trivial_action(G, A):
    return GAction(G, A, [_identity(A)] * G.order)


def linearize_action(action):
    """The induced action on Lin(A), permuting the hom bases."""
    A = action.base
    L = linearize(A)
    maps = [LinFunctor(L, L, F.ob, [L.basis_mor(F.mor[f]) for f in range(A.n_mor)])
            for F in action.maps]
    return GAction(action.group, L, maps)


# the resolution G̃

def build_gtilde(G):
    """Indiscrete groupoid on the elements of G with the left translation action."""
    n = G.order
    Gt = indiscrete(n, labels=G.elements)
    maps = [Functor(Gt, Gt, [G.mul[k][g] for g in range(n)],
                    [G.mul[k][a] * n + G.mul[k][b] for a in range(n) for b in range(n)])
            for k in range(n)]
    return GAction(G, Gt, maps)


def _funu_maps(R, action, Gt):
    G = action.group
    n = G.order
    maps = []
    for k in range(n):
        ki = G.inv[k]
        back = [G.mul[ki][g] for g in range(n)]
        if action.linear:
            elem = {m: i for i, m in enumerate(R.elements)}
            ob = []
            for F in R.functors:
                obs = tuple(action.act_ob(k, F.ob[back[g]]) for g in range(n))
                mors = tuple(elem[action.act_mor(k, R.elements[F.mor[back[a] * n + back[b]]])]
                             for a in range(n) for b in range(n))
                ob.append(R.obj_of[(obs, mors)])
            mor = []
            for i in range(R.n_basis):
                s, t = R.bsrc[i], R.btgt[i]
                comps = R.split(s, t, R.to_ambient(R.basis_mor(i)))
                moved = [action.act_mor(k, comps[back[g]]) for g in range(n)]
                mor.append(R.from_ambient(ob[s], ob[t], R.join(moved)))
            maps.append(LinFunctor(R, R, ob, mor))
            continue
        ob = []
        for F in R.functors:
            obs = tuple(action.act_ob(k, F.ob[back[g]]) for g in range(n))
            mors = tuple(action.act_mor(k, F.mor[back[a] * n + back[b]])
                         for a in range(n) for b in range(n))
            ob.append(R.obj_of[(obs, mors)])
        mor = []
        for (i, j, eta) in R.mor_labels:
            moved = tuple(action.act_mor(k, eta[back[g]]) for g in range(n))
            mor.append(R.mor_of[(ob[i], ob[j], moved)])
        maps.append(Functor(R, R, ob, mor))
    return maps


class Resolution:
    """funu(G̃, A) with its G-action, the unit r: A -> funu(G̃, A) and the
    evaluation e at the unit element."""

    def __init__(self, action, bound=DEFAULT_BOUND):
        self.source = action
        G, A = action.group, action.base
        self.gtilde = build_gtilde(G)
        Gt = self.gtilde.base
        R = funu(Gt, A, bound)
        self.category = R
        self.action = GAction(G, R, _funu_maps(R, action, Gt))
        n = G.order
        if action.linear:
            const = [R.obj_of[((x,) * n, tuple(R.elements.index(A.identity(x))
                                                for _ in range(n * n)))]
                     for x in range(A.n_obj)]
            self.unit = LinFunctor(A, R, const, [
                R.from_ambient(const[A.bsrc[i]], const[A.btgt[i]],
                               R.join([A.basis_mor(i)] * n)) for i in range(A.n_basis)])
            self.evaluation = LinFunctor(R, A, [F.ob[G.unit] for F in R.functors], [
                R.split(R.bsrc[i], R.btgt[i], R.to_ambient(R.basis_mor(i)))[G.unit]
                for i in range(R.n_basis)])
        else:
            const = [R.obj_of[((x,) * n, (A.ident[x],) * (n * n))] for x in range(A.n_obj)]
            self.unit = Functor(A, R, const, [R.mor_of[(const[A.src[f]], const[A.tgt[f]], (f,) * n)]
                                              for f in range(A.n_mor)])
            self.evaluation = Functor(R, A, [F.ob[G.unit] for F in R.functors],
                                      [eta[G.unit] for (_, _, eta) in R.mor_labels])

    def retraction_unitary(self, obj):
        """The (marked) unitary with components a(g -> 1): a -> r(e(a))."""
        R, G = self.category, self.source.group
        n = G.order
        F = R.functors[obj]
        target = self.unit.ob[self.evaluation.ob[obj]]
        if self.source.linear:
            comps = [R.elements[F.mor[g * n + G.unit]] for g in range(n)]
            return R.from_ambient(obj, target, R.join(comps))
        comps = tuple(F.mor[g * n + G.unit] for g in range(n))
        return R.mor_of[(obj, target, comps)]

    def certificates(self):
        A = self.source.base
        R = self.category
        linear = self.source.linear
        certs = {"unit weak equivalence": is_weak_equivalence(self.unit) if linear
                 else is_weak_equivalence(self.unit, A.marked is not None),
                 "evaluation after unit": Verdict(self.unit.then(self.evaluation) == _identity(A)),
                 "unit equivariant": Verdict(self.source.is_equivariant(self.unit, self.action))}
        bad = None
        for obj in range(R.n_obj):
            u = self.retraction_unitary(obj)
            special = (u in R.marked) if linear else (u in R.special_isos())
            if not special:
                bad = obj
                break
        certs["retraction unitaries"] = Verdict(bad is None, bad)
        return certs


def resolution(action, bound=DEFAULT_BOUND):
    return Resolution(action, bound)


# fixed points

def _special(A):
    if isinstance(A, LinearStarCategory):
        return A.marked_list()
    return A.special_isos()


def cocycles(action):
    """All (b, ρ) with ρ(g): b -> g(b) special, ρ(e) = id and
    ρ(gh) = g(ρ(h))∘ρ(g); canonically ordered."""
    G, A = action.group, action.base
    n = G.order
    linear = action.linear
    isos = _special(A)
    src = (lambda m: m.src) if linear else (lambda m: A.src[m])
    tgt = (lambda m: m.tgt) if linear else (lambda m: A.tgt[m])
    comp = A.compose
    ident = A.identity if linear else (lambda x: A.ident[x])
    out = []
    for b in range(A.n_obj):
        options = []
        for g in range(n):
            options.append([m for m in isos if src(m) == b and tgt(m) == action.act_ob(g, b)])
        for rho in cartesian(*options):
            if rho[G.unit] != ident(b):
                continue
            if all(rho[G.mul[g][h]] == comp(action.act_mor(g, rho[h]), rho[g])
                   for g in range(n) for h in range(n)):
                out.append((b, rho))
    return out


def _intertwines(action, f, rho, rho2):
    A = action.base
    return all(A.compose(rho2[g], f) == A.compose(action.act_mor(g, f), rho[g])
               for g in range(action.group.order))


def fixed_point_category(action):
    """The cocycle description of the homotopy fixed points.

    Objects are ``(b, ρ)``; morphisms are intertwiners f: b -> b' with
    ρ'(g)∘f = g(f)∘ρ(g); structure and marking come from A.
    """
    A = action.base
    objs = cocycles(action)
    if action.linear:
        return _fixed_linear(action, objs)
    morphisms, index = [], {}
    for s, (b, rho) in enumerate(objs):
        for t, (b2, rho2) in enumerate(objs):
            for f in A.hom(b, b2):
                if _intertwines(action, f, rho, rho2):
                    index[(s, t, f)] = len(morphisms)
                    morphisms.append(((s, t, A.mor_labels[f]), s, t))
    keys = sorted(index, key=index.get)
    out = {}
    for key in keys:
        out.setdefault(key[0], []).append(key)
    comp = {}
    for (s, t, f) in keys:
        for (_, u, f2) in out.get(t, ()):
            comp[(index[(t, u, f2)], index[(s, t, f)])] = index[(s, u, A.comp[(f2, f)])]
    ident = [index[(s, s, A.ident[b])] for s, (b, _) in enumerate(objs)]
    star = None if A.star is None else [index[(t, s, A.star[f])] for (s, t, f) in keys]
    marked = None if A.marked is None else [index[k] for k in keys if k[2] in A.marked]
    labels = [(A.objects[b], tuple(A.mor_labels[m] for m in rho)) for b, rho in objs]
    Fx = FinCategory(labels, morphisms, ident, comp, star=star, marked=marked)
    Fx.cocycles, Fx.index = objs, index
    return Fx


def _fixed_linear(action, objs):
    A = action.base
    G = action.group
    hom_basis = {}
    for s, (b, rho) in enumerate(objs):
        for t, (b2, rho2) in enumerate(objs):
            d = A.dim(b, b2)
            rows = []
            for g in range(G.order):
                cols = []
                for k in range(d):
                    f = LinMor(b, b2, vunit(d, k))
                    cols.append(vsub(A.compose(rho2[g], f).v,
                                     A.compose(action.act_mor(g, f), rho[g]).v))
                for r in range(len(cols[0]) if cols else 0):
                    rows.append(tuple(c[r] for c in cols))
            basis = nullspace(rows, d) if d else []
            if basis:
                hom_basis[(s, t)] = basis
    marked = []
    for s, (b, rho) in enumerate(objs):
        for t, (b2, rho2) in enumerate(objs):
            for m in A.marked_in(b, b2):
                if _intertwines(action, m, rho, rho2):
                    marked.append((s, t, m.v))
    Fx = build_from_ambient(
        [(A.objects[b], tuple(str(m) for m in rho)) for b, rho in objs], hom_basis,
        lambda s, t, u, v, w: A.compose(LinMor(objs[t][0], objs[u][0], w),
                                        LinMor(objs[s][0], objs[t][0], v)).v,
        lambda s, t, v: A.star(LinMor(objs[s][0], objs[t][0], v)).v,
        lambda s: A.identity(objs[s][0]).v,
        marked)
    Fx.cocycles = objs
    return Fx


def invariant_limit(action, bound=DEFAULT_BOUND):
    """lim over BG of the action, computed as strict invariants."""
    G = action.group
    A = action.base
    if not action.linear:
        B = bg(G)
        maps = {g: action.maps[g] for g in range(G.order) if g != G.unit}
        return finite_limit(B, [A], maps, bound).category
    fixed = [x for x in range(A.n_obj) if all(action.act_ob(g, x) == x for g in range(G.order))]
    pos = {x: k for k, x in enumerate(fixed)}
    hom_basis = {}
    for x in fixed:
        for y in fixed:
            d = A.dim(x, y)
            rows = []
            for g in range(G.order):
                cols = [vsub(action.act_mor(g, LinMor(x, y, vunit(d, k))).v, vunit(d, k))
                        for k in range(d)]
                for r in range(d):
                    rows.append(tuple(c[r] for c in cols))
            basis = nullspace(rows, d) if d else []
            if basis:
                hom_basis[(pos[x], pos[y])] = basis
    marked = [(pos[m.src], pos[m.tgt], m.v) for m in A.marked_list()
              if m.src in pos and m.tgt in pos
              and all(action.act_mor(g, m) == m for g in range(G.order))]
    L = build_from_ambient(
        [A.objects[x] for x in fixed], hom_basis,
        lambda s, t, u, v, w: A.compose(LinMor(fixed[t], fixed[u], w), LinMor(fixed[s], fixed[t], v)).v,
        lambda s, t, v: A.star(LinMor(fixed[s], fixed[t], v)).v,
        lambda s: A.identity(fixed[s]).v,
        marked)
    L.fixed = fixed
    return L


class FixedPoints:
    """The cocycle category, the invariant limit of the resolution, and the
    comparison functor between them."""

    def __init__(self, action, bound=DEFAULT_BOUND):
        self.action = action
        self.explicit = fixed_point_category(action)
        self.resolution = Resolution(action, bound)
        self.limit = invariant_limit(self.resolution.action, bound)
        self.comparison = self._comparison()

    def _comparison(self):
        act, G = self.action, self.action.group
        n = G.order
        R = self.resolution.category
        Fx, L = self.explicit, self.limit
        if act.linear:
            elem = {m: i for i, m in enumerate(R.elements)}
            fixed_pos = {x: k for k, x in enumerate(L.fixed)}
            ob = []
            for b, rho in Fx.cocycles:
                obs = tuple(act.act_ob(g, b) for g in range(n))
                mors = tuple(elem[act.act_mor(g, rho[G.mul[G.inv[g]][h]])]
                             for g in range(n) for h in range(n))
                ob.append(fixed_pos[R.obj_of[(obs, mors)]])
            mor = []
            for i in range(Fx.n_basis):
                s, t = Fx.bsrc[i], Fx.btgt[i]
                f = LinMor(Fx.cocycles[s][0], Fx.cocycles[t][0], Fx.to_ambient(Fx.basis_mor(i)))
                vec = R.join([act.act_mor(g, f) for g in range(n)])
                r_el = R.from_ambient(L.fixed[ob[s]], L.fixed[ob[t]], vec)
                mor.append(L.from_ambient(ob[s], ob[t], r_el.v))
            return LinFunctor(Fx, L, ob, mor)
        lim_ob = {x[0]: k for k, x in enumerate(L.objects)}
        lim_mor = {m[0]: k for k, m in enumerate(L.mor_labels)}
        ob = []
        for b, rho in Fx.cocycles:
            obs = tuple(act.act_ob(g, b) for g in range(n))
            # a(g -> h) = g(ρ(g⁻¹h))
            mors = tuple(act.act_mor(g, rho[G.mul[G.inv[g]][h]]) for g in range(n) for h in range(n))
            ob.append(R.obj_of[(obs, mors)])
        mor = []
        for (s, t, f) in sorted(Fx.index, key=Fx.index.get):
            comps = tuple(act.act_mor(g, f) for g in range(n))
            mor.append(lim_mor[R.mor_of[(ob[s], ob[t], comps)]])
        return Functor(Fx, L, [lim_ob[x] for x in ob], mor)

    def is_isomorphism(self):
        """The comparison functor is an isomorphism of (marked, linear) *-categories."""
        F = self.comparison
        A, B = F.dom, F.cod
        if sorted(F.ob) != list(range(B.n_obj)):
            return Verdict(False, ("objects", F.ob))
        if self.action.linear:
            v = check_linear_functor(F)
            if not v:
                return v
            for a in range(A.n_obj):
                for b in range(A.n_obj):
                    d = A.dim(a, b)
                    if d != B.dim(F.ob[a], F.ob[b]) or \
                            (d and rank([F.mor[i].v for i in A.hom(a, b)], d) != d):
                        return Verdict(False, ("hom", (a, b)))
            imgs = {F(m) for m in A.marked_list()}
            if len(imgs) != len(A.marked) or imgs != set(B.marked):
                return Verdict(False, ("marking", None))
            return Verdict(True)
        v = check_functor(F)
        if not v:
            return v
        if sorted(F.mor) != list(range(B.n_mor)):
            return Verdict(False, ("morphisms", F.mor))
        if A.marked is not None and {F.mor[f] for f in A.marked} != set(B.marked):
            return Verdict(False, ("marking", None))
        return Verdict(True)


def fixed_points(action, bound=DEFAULT_BOUND):
    return FixedPoints(action, bound)


# injective fibrancy

def equivariant_trivial_cofibrations(G, flavor=(True, True)):
    """Equivariant maps i: K -> L whose underlying functors are trivial
    cofibrations: Δ⁰ -> 𝕀 with trivial actions, G̃ -> G̃♯𝕀, G̃ into the
    indiscrete groupoid on G ⊔ {*}, and the identity of G̃."""
    n = G.order
    out = []
    pt_act = trivial_action(G, indiscrete(1))
    I_act = trivial_action(G, indiscrete(2))
    out.append((pt_act, I_act, Functor(pt_act.base, I_act.base, [0], [0])))
    gt = build_gtilde(G)
    Gt = gt.base
    I = indiscrete(2)
    S = sharp(Gt, I)
    S_maps = [Functor(S, S, [S.oid[(F.ob[x], y)] for x, y in S.pairs],
                      [S.mid[(F.mor[f], p)] for f, p in S.mor_pairs]) for F in gt.maps]
    s_act = GAction(G, S, S_maps)
    out.append((gt, s_act, Functor(Gt, S, [S.oid[(x, 0)] for x in range(n)],
                                   [S.mid[(f, 0)] for f in range(Gt.n_mor)])))
    Big = indiscrete(n + 1, labels=list(G.elements) + ["*"])
    big_maps = []
    for k in range(n):
        perm = [G.mul[k][g] for g in range(n)] + [n]
        big_maps.append(Functor(Big, Big, perm, [perm[a] * (n + 1) + perm[b]
                                                 for a in range(n + 1) for b in range(n + 1)]))
    big_act = GAction(G, Big, big_maps)
    out.append((gt, big_act, Functor(Gt, Big, range(n),
                                     [a * (n + 1) + b for a in range(n) for b in range(n)])))
    out.append((gt, gt, identity_functor(Gt)))
    return [tuple(_restyle_action(x, flavor) for x in (K, L)) + (i,) for K, L, i in out]


def _restyle_action(action, flavor):
    from .model import _restyle
    base = _restyle(action.base, flavor)
    maps = [Functor(base, base, F.ob, F.mor) for F in action.maps]
    return GAction(action.group, base, maps)


def _equivariant_functors(K, T, bound, ob_candidates=None, mor_candidates=None, Lk=None):
    """Equivariant functors K.base -> T.base (finite K, finite or linear T;
    for linear T the functors start at ``Lk`` = Lin(K.base))."""
    if T.linear:
        for F in enumerate_linear_functors(Lk, T.base, bound=bound, ob_candidates=ob_candidates):
            if all(F(Lk.basis_mor(K.maps[g].mor[f])) == T.act_mor(g, F.mor[f])
                   for g in range(K.group.order) for f in range(K.base.n_mor)):
                yield F
        return
    for F in iter_functors(K.base, T.base, bound=bound, ob_candidates=ob_candidates,
                           mor_candidates=mor_candidates):
        if K.is_equivariant(F, T):
            yield F


def check_injective_fibrancy(res_action, family=None, bound=DEFAULT_BOUND):
    """Every equivariant map K -> funu(G̃, A) extends along each i: K -> L in
    the family.  Witness: (family index, the map that does not extend)."""
    G = res_action.group
    R = res_action.base
    if family is None:
        flavor = (True, True) if res_action.linear else (R.star is not None, R.marked is not None)
        family = equivariant_trivial_cofibrations(G, flavor)
    for n_i, (K, L, i) in enumerate(family):
        Lk = Ll = Li = None
        if res_action.linear:
            Lk, Ll = linearize(K.base), linearize(L.base)
            Li = LinFunctor(Lk, Ll, i.ob, [Ll.basis_mor(m) for m in i.mor])
        for top in _equivariant_functors(K, res_action, bound, Lk=Lk):
            ob_c = [None] * L.base.n_obj
            for a, b in enumerate(i.ob):
                ob_c[b] = [top.ob[a]]
            if res_action.linear:
                found = any(Li.then(F) == top for F in
                            _equivariant_functors(L, res_action, bound, ob_candidates=ob_c, Lk=Ll))
            else:
                mor_c = [None] * L.base.n_mor
                for f, h in enumerate(i.mor):
                    mor_c[h] = [top.mor[f]]
                found = next(_equivariant_functors(L, res_action, bound, ob_c, mor_c), None) is not None
            if not found:
                return Verdict(False, (n_i, top))
    return Verdict(True)


def check_equivariant_exponential_law(C, action, bound=DEFAULT_BOUND):
    """Equivariant functors C♯G̃ -> A and C -> funu(G̃, A) (trivial action on C)
    correspond under the exponential transport.  Witness: the common count."""
    G, A = action.group, action.base
    gt = build_gtilde(G)
    Gt = gt.base
    S = sharp(C, Gt)
    s_act = GAction(G, S, [Functor(S, S, [S.oid[(c, F.ob[x])] for c, x in S.pairs],
                                   [S.mid[(f, F.mor[p])] for f, p in S.mor_pairs])
                           for F in gt.maps])
    res = Resolution(action, bound)
    c_act = trivial_action(G, C)
    left = [F for F in iter_functors(S, A, bound=bound) if s_act.is_equivariant(F, action)]
    right = [F for F in iter_functors(C, res.category, bound=bound)
             if c_act.is_equivariant(F, res.action)]
    moved = {exponential_transport(F, C, Gt, A, res.category) for F in left}
    if moved != set(right) or len(moved) != len(left):
        return Verdict(False, (len(left), len(right)))
    if any(exponential_inverse(P, C, Gt, A, S) not in set(left) for P in right):
        return Verdict(False, ("inverse", None))
    return Verdict(True, len(left))


# orbits and induction

def orbit(C, G):
    """C♯BG."""
    return sharp(C, bg(G))


def induction_value(C, G, H):
    """The value C♯BH at the orbit H\\G."""
    if not hasattr(H, "embedding"):
        raise CategoryError("H must be built with FinGroup.subgroup", None)
    return sharp(C, bg(H))


def orbit_colimit_certificate(G, K, bound=DEFAULT_BOUND):
    """Equivariant functors G̃ -> K (trivial action on K) and functors BG -> K
    correspond via Ψ(g) = Φ(1 -> g) and Φ(g -> h) = Ψ(g⁻¹h).  Works on
    underlying groupoids.  Witness: the common count."""
    n = G.order
    gt = build_gtilde(G)
    Gt = gt.base.underlying()
    Kp = K.underlying()
    BG = bg(G).underlying()
    t_act = [Functor(Gt, Gt, F.ob, F.mor) for F in gt.maps]
    idK = identity_functor(Kp)
    equi = [F for F in iter_functors(Gt, Kp, bound=bound)
            if all(t.then(F) == F.then(idK) for t in t_act)]
    plain = list(iter_functors(BG, Kp, bound=bound))

    def to_bg(Phi):
        return Functor(BG, Kp, [Phi.ob[G.unit]], [Phi.mor[G.unit * n + g] for g in range(n)])

    def to_gt(Psi):
        return Functor(Gt, Kp, [Psi.ob[0]] * n,
                       [Psi.mor[G.mul[G.inv[a]][b]] for a in range(n) for b in range(n)])

    if {to_bg(F) for F in equi} != set(plain) or len(plain) != len(equi):
        return Verdict(False, (len(equi), len(plain)))
    for Psi in plain:
        Phi = to_gt(Psi)
        if Phi not in set(equi) or to_bg(Phi) != Psi:
            return Verdict(False, ("round trip", Psi))
    return Verdict(True, len(plain))


def orbit_cofibrancy_certificate(C, G, trivial_fibrations=(), bound=DEFAULT_BOUND):
    """C♯G̃ -> C is a weak equivalence, and every equivariant C♯G̃ -> Y lifts
    along each trivial fibration p: X -> Y (trivial actions on X and Y)."""
    gt = build_gtilde(G)
    S = sharp(C, gt.base)
    proj = Functor(S, C, [c for c, _ in S.pairs], [f for f, _ in S.mor_pairs])
    we = is_weak_equivalence(proj, C.marked is not None)
    if not we:
        return Verdict(False, ("projection", we.witness))
    s_act = GAction(G, S, [Functor(S, S, [S.oid[(c, F.ob[x])] for c, x in S.pairs],
                                   [S.mid[(f, F.mor[p])] for f, p in S.mor_pairs])
                           for F in gt.maps])
    for n_p, p in enumerate(trivial_fibrations):
        X_act, Y_act = trivial_action(G, p.dom), trivial_action(G, p.cod)
        for b in iter_functors(S, p.cod, bound=bound):
            if not s_act.is_equivariant(b, Y_act):
                continue
            ob_c = [[x for x in range(p.dom.n_obj) if p.ob[x] == b.ob[s]] for s in range(S.n_obj)]
            mor_c = [[f for f in range(p.dom.n_mor) if p.mor[f] == b.mor[m]] for m in range(S.n_mor)]
            if not any(s_act.is_equivariant(F, X_act)
                       for F in iter_functors(S, p.dom, bound=bound, ob_candidates=ob_c,
                                              mor_candidates=mor_c)):
                return Verdict(False, (n_p, b))
    return Verdict(True)


def group_algebra_table(G):
    """Oracle: structure constants of Q(i)[G] in the basis e_g, e_h e_g = e_hg."""
    n = G.order
    return {(h, g): vunit(n, G.mul[h][g]) for g in range(n) for h in range(n)}
