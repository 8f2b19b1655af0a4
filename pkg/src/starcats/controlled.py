"""Controlled objects over finite bornological coarse spaces.

The ambient category is finite sets with relations: Hom(M, M') is the set
of subsets of M' x M, stored as frozensets of ``(target, source)`` pairs,
composed relationally and starred by transposition.  An X-controlled
object on the carrier ``range(m)`` is a labelling of its elements by
points of X; its measure sends Y to the partial identity on the elements
labelled in Y.
"""

from itertools import chain, combinations, permutations, product as cartesian

from .fincat import (BoundExceeded, CategoryError, DEFAULT_BOUND, FinCategory, Functor, ParseError,
                     Verdict, check_functor)
from .equivariant import FinGroup, GAction, fixed_points

MAX_POINTS = 6


class IncompatibleStructures(CategoryError):
    pass


class NotCofinal(CategoryError):
    pass


def subsets(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))]


# relations

def compose(V, U):
    """V∘U: (z, x) whenever (z, y) ∈ V and (y, x) ∈ U."""
    by_src = {}
    for z, y in V:
        by_src.setdefault(y, []).append(z)
    return frozenset((z, x) for y, x in U for z in by_src.get(y, ()))


def transpose(U):
    return frozenset((x, y) for y, x in U)


def diagonal(xs):
    return frozenset((x, x) for x in xs)


def thicken(U, B):
    """U[B] = {y : (y, x) ∈ U for some x ∈ B}."""
    return frozenset(y for y, x in U if x in B)


def is_partial_identity(R):
    return all(y == x for y, x in R)


def image(R):
    """Image of a selfadjoint idempotent relation; only partial identities
    (which is what measures produce) are supported."""
    if not is_partial_identity(R):
        raise ValueError("image is only defined for partial identity relations")
    return frozenset(x for _, x in R)


class BornCoarseSpace:
    """Finite bornological coarse space, optionally with a G-action on points.

    The coarse structure generated by the given entourages is the set of
    all subsets of ``maximal``, the equivalence relation generated by the
    diagonal and the generators.
    """

    def __init__(self, points, generators=(), bornology="all", group=None, action=None):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise CategoryError("duplicate points", None)
        pos = {p: k for k, p in enumerate(self.points)}
        n = len(self.points)
        gens = [(pos[a], pos[b]) for a, b in generators]
        self.generators = frozenset(gens)
        self.maximal = _equivalence_closure(n, gens)
        self.bornology = self._bornology(bornology, pos)
        self.group = group
        self.action = None
        if group is not None:
            self.action = tuple(tuple(pos[action[g][p]] for p in self.points)
                                for g in range(group.order))
            self._check_action()

    @property
    def n(self):
        return len(self.points)

    @property
    def everything(self):
        return frozenset(range(self.n))

    def diag(self):
        return diagonal(range(self.n))

    def is_entourage(self, U):
        return U <= self.maximal

    def _bornology(self, given_sets, pos):
        n = len(self.points)
        if given_sets == "all":
            return set(subsets(range(n)))
        given = [frozenset(pos[p] for p in B) for B in given_sets]
        closed = set()
        for B in given:
            closed.update(subsets(B))
        changed = True
        while changed:
            changed = False
            for B in list(closed):
                for C in list(closed):
                    if B | C not in closed:
                        closed.add(B | C)
                        changed = True
        for x in range(n):
            if frozenset([x]) not in closed:
                raise IncompatibleStructures(f"bornology misses the point {self.points[x]}",
                                             self.points[x])
        for B in closed:
            if thicken(self.maximal, B) not in closed:
                raise IncompatibleStructures("a thickening of a bounded set is unbounded",
                                             sorted(B))
        return closed

    def _check_action(self):
        G, n = self.group, self.n
        for g, perm in enumerate(self.action):
            if sorted(perm) != list(range(n)):
                raise CategoryError("group element does not permute the points", g)
        if self.action[G.unit] != tuple(range(n)):
            raise CategoryError("unit does not act trivially", G.unit)
        for g in range(G.order):
            for h in range(G.order):
                if tuple(self.action[g][self.action[h][x]] for x in range(n)) != \
                        self.action[G.mul[g][h]]:
                    raise CategoryError("point action is not multiplicative", (g, h))
        for g, perm in enumerate(self.action):
            moved = frozenset((perm[y], perm[x]) for y, x in self.maximal)
            if moved != self.maximal:
                raise NotCofinal("invariant entourages are not cofinal", g)
            for B in self.bornology:
                if frozenset(perm[x] for x in B) not in self.bornology:
                    raise CategoryError("bornology is not invariant", (g, sorted(B)))

    def act(self, g, Y):
        return frozenset(self.action[g][x] for x in Y)

    def to_json(self):
        out = {"points": [str(p) for p in self.points],
               "entourage_generators": [[str(self.points[a]), str(self.points[b])]
                                        for a, b in sorted(self.generators)],
               "bornology": "all" if len(self.bornology) == 2 ** self.n else
               [[str(self.points[x]) for x in sorted(B)] for B in sorted(self.bornology, key=sorted)]}
        if self.group is not None:
            out["group_action"] = {
                "group": self.group.to_json(),
                "on_points": {str(self.group.elements[g]): {str(p): str(self.points[perm[k]])
                                                            for k, p in enumerate(self.points)}
                              for g, perm in enumerate(self.action)}}
        return out


def _equivalence_closure(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return frozenset((x, y) for x in range(n) for y in range(n) if find(x) == find(y))


def validate_space(data):
    """Build a space from its JSON description."""
    try:
        points = [str(p) for p in data["points"]]
        gens = [(str(a), str(b)) for a, b in data.get("entourage_generators", [])]
        born = data.get("bornology", "all")
        if born != "all":
            born = [[str(p) for p in B] for B in born]
        group = action = None
        if data.get("group_action"):
            ga = data["group_action"]
            group = FinGroup.from_json(ga["group"])
            action = [{str(k): str(v) for k, v in ga["on_points"][str(g)].items()}
                      for g in group.elements]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed space: {exc!r}", str(exc).strip("'")) from exc
    return BornCoarseSpace(points, gens, born, group, action)


def group_space(G):
    """G acting on itself by left multiplication, discrete coarse structure."""
    return BornCoarseSpace(G.elements, (), "all", G,
                           [{G.elements[x]: G.elements[G.mul[g][x]] for x in range(G.order)}
                            for g in range(G.order)])


# controlled objects

class ControlledObject:
    """Carrier ``range(m)`` with labelling ``labels[i]`` ∈ X."""

    __slots__ = ("space", "labels")

    def __init__(self, space, labels):
        self.space = space
        self.labels = tuple(labels)

    @property
    def size(self):
        return len(self.labels)

    def measure(self, Y):
        return frozenset((i, i) for i, x in enumerate(self.labels) if x in Y)

    def key(self):
        return self.labels


def check_measure(space, size, measure):
    """Projection-valued measure axioms and determination on points."""
    M = range(size)
    X = space.everything
    if measure(X) != diagonal(M):
        return Verdict(False, ("φ(X) is not the identity", None))
    if measure(frozenset()):
        return Verdict(False, ("φ(∅) is not zero", None))
    subs = subsets(X)
    for Y in subs:
        P = measure(Y)
        if transpose(P) != P or compose(P, P) != P:
            return Verdict(False, ("not a selfadjoint idempotent", sorted(Y)))
    for Y, Z in cartesian(subs, subs):
        if compose(measure(Y), measure(Z)) != measure(Y & Z):
            return Verdict(False, ("not multiplicative", (sorted(Y), sorted(Z))))
        if measure(Y | Z) | measure(Y & Z) != measure(Y) | measure(Z):
            return Verdict(False, ("not additive", (sorted(Y), sorted(Z))))
    pieces = [image(measure(frozenset([x]))) for x in sorted(X)]
    covered = [i for piece in pieces for i in piece]
    if sorted(covered) != list(M):
        return Verdict(False, ("not determined on points", None))
    return Verdict(True)


def is_controlled(A, source, target, U):
    """φ'(B')∘A∘φ(B) = 0 for all U-separated pairs (B, B'), exhaustively."""
    space = source.space
    if space.n > MAX_POINTS:
        raise BoundExceeded(space.n, MAX_POINTS)
    subs = subsets(space.everything)
    for B in subs:
        near = thicken(U, B)
        left = compose(A, source.measure(B))
        for B2 in subs:
            if near & B2:
                continue
            if compose(target.measure(B2), left):
                return Verdict(False, (sorted(B), sorted(B2)))
    return Verdict(True)


def controlled_by(A, source, target, U):
    """Pointwise form: every pair of A lies over a pair of U."""
    return all((target.labels[y], source.labels[x]) in U for y, x in A)


def is_bijection(A, m, m2):
    return (compose(transpose(A), A) == diagonal(range(m))
            and compose(A, transpose(A)) == diagonal(range(m2)))


def _all_relations(m, m2):
    pairs = [(y, x) for y in range(m2) for x in range(m)]
    for bits in cartesian((False, True), repeat=len(pairs)):
        yield frozenset(p for p, b in zip(pairs, bits) if b)


def build_vplus(space, max_size=2, bound=DEFAULT_BOUND):
    """V⁺(X) restricted to carriers of size at most ``max_size``.

    Morphisms are the relations controlled by the maximal entourage; marked
    morphisms are the diag-controlled bijections.
    """
    if space.n > MAX_POINTS:
        raise BoundExceeded(space.n, MAX_POINTS)
    objs = [ControlledObject(space, labels) for m in range(max_size + 1)
            for labels in cartesian(range(space.n), repeat=m)]
    index = {}
    morphisms = []
    for s, a in enumerate(objs):
        for t, b in enumerate(objs):
            for R in _all_relations(a.size, b.size):
                if controlled_by(R, a, b, space.maximal):
                    index[(s, t, R)] = len(morphisms)
                    morphisms.append(((s, t, tuple(sorted(R))), s, t))
                    if len(morphisms) > bound:
                        raise BoundExceeded(len(morphisms), bound)
    keys = sorted(index, key=index.get)
    out = {}
    for key in keys:
        out.setdefault(key[0], []).append(key)
    comp = {}
    for (s, t, R) in keys:
        for (_, u, R2) in out.get(t, ()):
            comp[(index[(t, u, R2)], index[(s, t, R)])] = index[(s, u, compose(R2, R))]
    ident = [index[(s, s, diagonal(range(a.size)))] for s, a in enumerate(objs)]
    star = [index[(t, s, transpose(R))] for (s, t, R) in keys]
    diag = space.diag()
    marked = [index[(s, t, R)] for (s, t, R) in keys
              if is_bijection(R, objs[s].size, objs[t].size)
              and controlled_by(R, objs[s], objs[t], diag)]
    V = FinCategory([o.labels for o in objs], morphisms, ident, comp, star=star, marked=marked)
    V.controlled, V.index, V.relations = objs, index, keys
    V.obj_of = {o.labels: k for k, o in enumerate(objs)}
    return V


def pushforward(f, source_space, target_space, V, W):
    """f_*: V⁺(X) -> V⁺(X') for a map of points ``f`` (index -> index),
    relabelling objects and keeping relations."""
    ob = [W.obj_of[tuple(f[x] for x in o.labels)] for o in V.controlled]
    mor = [W.index[(ob[s], ob[t], R)] for (s, t, R) in V.relations]
    return Functor(V, W, ob, mor)


def vplus_action(space, V):
    """The G-action on V⁺(X) induced by the action on points."""
    G = space.group
    maps = []
    for g in range(G.order):
        ob = [V.obj_of[tuple(space.action[g][x] for x in o.labels)] for o in V.controlled]
        mor = [V.index[(ob[s], ob[t], R)] for (s, t, R) in V.relations]
        maps.append(Functor(V, V, ob, mor))
    return GAction(G, V, maps)


# equivariant objects

def is_equivariant_object(space, obj, rho):
    """ρ(g)∘φ(gY)∘ρ(g⁻¹) = φ(Y) for all g and Y, and ρ a homomorphism."""
    G = space.group
    for g in range(G.order):
        for h in range(G.order):
            if compose(rho[g], rho[h]) != rho[G.mul[g][h]]:
                return False
    for g in range(G.order):
        for Y in subsets(space.everything):
            if compose(compose(rho[g], obj.measure(space.act(g, Y))), rho[G.inv[g]]) != obj.measure(Y):
                return False
    return True


def _permutation_relations(m):
    return [frozenset((p[i], i) for i in range(m)) for p in permutations(range(m))]


class EquivariantVPlus:
    """Triples (M, φ, ρ) and equivariant controlled relations, together with
    the comparison to the fixed points of the action on V⁺(X)."""

    def __init__(self, space, max_size=2, bound=DEFAULT_BOUND):
        G = space.group
        if G is None:
            raise ValueError("space carries no group action")
        if not G.is_abelian():
            # relabelling acts trivially on relations, so cocycles are
            # anti-homomorphisms; they agree with representations only for abelian G
            raise ValueError("equivariant V⁺ is compared for abelian groups only")
        self.space = space
        self.vplus = build_vplus(space, max_size, bound)
        V = self.vplus
        triples = []
        for s, obj in enumerate(V.controlled):
            perms = _permutation_relations(obj.size)
            for rho in cartesian(perms, repeat=G.order):
                if is_equivariant_object(space, obj, rho):
                    triples.append((s, rho))
        self.triples = triples
        index, morphisms = {}, []
        for a, (s, rho) in enumerate(triples):
            for b, (t, rho2) in enumerate(triples):
                for (s0, t0, R) in V.relations:
                    if (s0, t0) != (s, t):
                        continue
                    if all(compose(rho2[g], R) == compose(R, rho[g]) for g in range(G.order)):
                        index[(a, b, R)] = len(morphisms)
                        morphisms.append(((a, b, tuple(sorted(R))), a, b))
        keys = sorted(index, key=index.get)
        out = {}
        for key in keys:
            out.setdefault(key[0], []).append(key)
        comp = {}
        for (a, b, R) in keys:
            for (_, c, R2) in out.get(b, ()):
                comp[(index[(b, c, R2)], index[(a, b, R)])] = index[(a, c, compose(R2, R))]
        ident = [index[(a, a, diagonal(range(V.controlled[s].size)))]
                 for a, (s, _) in enumerate(triples)]
        star = [index[(b, a, transpose(R))] for (a, b, R) in keys]
        marked = [index[(a, b, R)] for (a, b, R) in keys
                  if V.index[(triples[a][0], triples[b][0], R)] in V.marked]
        labels = [(V.controlled[s].labels, tuple(tuple(sorted(r)) for r in rho))
                  for s, rho in triples]
        self.category = FinCategory(labels, morphisms, ident, comp, star=star, marked=marked)
        self.index = index

    def comparison(self, bound=DEFAULT_BOUND):
        """Functor to the cocycle description of the fixed points of
        ``vplus_action``, sending (M, φ, ρ) to ((M, φ), g ↦ ρ(g))."""
        fp = fixed_points(vplus_action(self.space, self.vplus), bound)
        V, Fx = self.vplus, fp.explicit
        G = self.space.group
        where = {(b, rho): k for k, (b, rho) in enumerate(Fx.cocycles)}
        ob = []
        for s, rho in self.triples:
            t = [None] * G.order
            for g in range(G.order):
                # σ(g): (M, π) -> (M, gπ) is the relation ρ(g)
                t[g] = V.index[(s, V.obj_of[tuple(self.space.action[g][x]
                                                  for x in V.controlled[s].labels)], rho[g])]
            ob.append(where.get((s, tuple(t))))
        if None in ob:
            return fp, None
        mor = [Fx.index[(ob[a], ob[b], V.index[(self.triples[a][0], self.triples[b][0], R)])]
               for (a, b, R) in sorted(self.index, key=self.index.get)]
        return fp, Functor(self.category, Fx, ob, mor)

    def check_agreement(self, bound=DEFAULT_BOUND):
        """The comparison is an isomorphism of marked *-categories and the
        cocycle category agrees with the invariant limit."""
        fp, F = self.comparison(bound)
        if F is None:
            return Verdict(False, ("object without cocycle", None))
        v = check_functor(F)
        if not v:
            return v
        C, D = F.dom, F.cod
        if sorted(F.ob) != list(range(D.n_obj)) or sorted(F.mor) != list(range(D.n_mor)):
            return Verdict(False, ("not bijective", (C.n_obj, D.n_obj, C.n_mor, D.n_mor)))
        if {F.mor[f] for f in C.marked} != set(D.marked):
            return Verdict(False, ("marking", None))
        lim = fp.is_isomorphism()
        if not lim:
            return Verdict(False, ("limit", lim.witness))
        return Verdict(True, (C.n_obj, C.n_mor))


def equivariant_vplus(space, max_size=2, bound=DEFAULT_BOUND):
    return EquivariantVPlus(space, max_size, bound)

