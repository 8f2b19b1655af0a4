"""Finite categories as explicit tables, functors, natural transformations,
exhaustive functor enumeration and componentwise finite limits.

Objects and morphisms are dense integer ids; labels are kept only for I/O.
A category may optionally carry an involution ``star`` and a set of marked
morphisms, which is how the *-flavoured categories of :mod:`starcats.starcat`
are represented.  All enumeration is lexicographic in ids.
"""

import itertools
from typing import NamedTuple

DEFAULT_BOUND = 10 ** 6


class CategoryError(ValueError):
    """Invalid structure; ``witness`` names the offending ids."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class DanglingComposite(CategoryError):
    pass


class InvalidStar(CategoryError):
    pass


class InvalidMarking(CategoryError):
    pass


class ParseError(CategoryError):
    """Input that does not have the declared shape; ``field`` names the
    missing or mistyped entry and ``line`` is set for JSON syntax errors."""

    def __init__(self, message, field=None, line=None):
        super().__init__(message, field)
        self.field = field
        self.line = line


class BoundExceeded(RuntimeError):
    def __init__(self, size, bound):
        super().__init__(f"search size {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound


class Verdict(NamedTuple):
    """A boolean answer together with a witness explaining it."""
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


class FinCategory:
    """Finite category, optionally with an involution and a marking.

    ``morphisms`` is a sequence of ``(label, src, tgt)`` with integer ends,
    ``identity[a]`` the identity of object ``a`` and ``compose`` a mapping
    ``(g, f) -> g∘f`` over all composable pairs.
    """

    def __init__(self, objects, morphisms, identity, compose, star=None,
                 marked=None, check=True):
        self.objects = tuple(objects)
        morphisms = list(morphisms)
        self.mor_labels = tuple(m[0] for m in morphisms)
        self.src = tuple(m[1] for m in morphisms)
        self.tgt = tuple(m[2] for m in morphisms)
        self.ident = tuple(identity)
        self.comp = dict(compose)
        self.star = None if star is None else tuple(star)
        self.marked = None if marked is None else frozenset(marked)
        n = len(self.objects)
        self._hom = {}
        self._out = [[] for _ in range(n)]
        self._in = [[] for _ in range(n)]
        for f, (s, t) in enumerate(zip(self.src, self.tgt)):
            if not (0 <= s < n and 0 <= t < n):
                raise DanglingComposite(f"morphism {f} has undeclared ends", f)
            self._hom.setdefault((s, t), []).append(f)
            self._out[s].append(f)
            self._in[t].append(f)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}
        self._ident_set = frozenset(self.ident)
        if check:
            self.validate()

    # basic queries

    @property
    def n_obj(self):
        return len(self.objects)

    @property
    def n_mor(self):
        return len(self.src)

    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def out_of(self, a):
        return self._out[a]

    def into(self, b):
        return self._in[b]

    def is_identity(self, f):
        return f in self._ident_set

    def compose(self, g, f):
        return self.comp[(g, f)]

    def inverse(self, f):
        s, t = self.src[f], self.tgt[f]
        for g in self.hom(t, s):
            if self.comp[(g, f)] == self.ident[s] and self.comp[(f, g)] == self.ident[t]:
                return g
        return None

    def is_groupoid(self):
        return all(self.inverse(f) is not None for f in range(self.n_mor))

    @property
    def has_star(self):
        return self.star is not None

    @property
    def is_marked(self):
        return self.marked is not None

    def is_unitary(self, f):
        s = self.star[f]
        return (self.comp[(s, f)] == self.ident[self.src[f]]
                and self.comp[(f, s)] == self.ident[self.tgt[f]])

    def unitaries(self):
        return [f for f in range(self.n_mor) if self.is_unitary(f)]

    def special_isos(self):
        """Marked morphisms when marked, unitaries for *-categories, else isomorphisms."""
        if self.marked is not None:
            return sorted(self.marked)
        if self.star is not None:
            return self.unitaries()
        return [f for f in range(self.n_mor) if self.inverse(f) is not None]

    def obj_index(self, label):
        return _index(self.objects, label, "object")

    def mor_index(self, label):
        return _index(self.mor_labels, label, "morphism")

    def replace(self, star=False, marked=False):
        """Same tables with the involution and/or marking replaced (False keeps)."""
        return FinCategory(self.objects,
                           zip(self.mor_labels, self.src, self.tgt),
                           self.ident, self.comp,
                           self.star if star is False else star,
                           self.marked if marked is False else marked,
                           check=True)

    def underlying(self):
        return FinCategory(self.objects, zip(self.mor_labels, self.src, self.tgt),
                           self.ident, self.comp, check=False)

    def __repr__(self):
        kind = "FinCategory" if self.star is None else "StarCategory"
        return f"<{kind} {self.n_obj} objects, {self.n_mor} morphisms>"

    def key(self):
        return (self.objects, self.mor_labels, self.src, self.tgt, self.ident,
                tuple(sorted(self.comp.items())), self.star,
                None if self.marked is None else tuple(sorted(self.marked)))

    # validation

    def validate(self):
        n, m = self.n_obj, self.n_mor
        if len(self.ident) != n:
            raise MissingIdentity("identity table has wrong length", None)
        for a, i in enumerate(self.ident):
            if not (0 <= i < m) or self.src[i] != a or self.tgt[i] != a:
                raise MissingIdentity(f"identity of object {a} is not an endomorphism of it", a)
        for (g, f), h in self.comp.items():
            if not all(0 <= x < m for x in (g, f, h)):
                raise DanglingComposite(f"composite entry {(g, f, h)} uses undeclared ids", (g, f, h))
            if self.tgt[f] != self.src[g]:
                raise DanglingComposite(f"entry {(g, f, h)} composes non-composable morphisms", (g, f, h))
            if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                raise DanglingComposite(f"entry {(g, f, h)} has composite of the wrong type", (g, f, h))
        for f in range(m):
            s, t = self.src[f], self.tgt[f]
            for key in ((self.ident[t], f), (f, self.ident[s])):
                if self.comp.get(key) != f:
                    raise MissingIdentity(f"identity law fails or is unrecorded for {f}", f)
        for f in range(m):
            for g in self._out[self.tgt[f]]:
                if (g, f) not in self.comp:
                    raise DanglingComposite(f"no composite recorded for {(g, f)}", (g, f))
        for f in range(m):
            for g in self._out[self.tgt[f]]:
                gf = self.comp[(g, f)]
                for h in self._out[self.tgt[g]]:
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise NonAssociative(f"associativity fails for {(h, g, f)}", (h, g, f))
        if self.star is not None:
            self._validate_star()
        if self.marked is not None:
            if self.star is None:
                raise InvalidMarking("a marking needs an involution", None)
            self._validate_marking()

    def _validate_star(self):
        st = self.star
        if len(st) != self.n_mor:
            raise InvalidStar("star table has wrong length", None)
        for f in range(self.n_mor):
            s = st[f]
            if not 0 <= s < self.n_mor:
                raise InvalidStar(f"star of {f} is undeclared", f)
            if self.src[s] != self.tgt[f] or self.tgt[s] != self.src[f]:
                raise InvalidStar(f"star of {f} does not reverse it", f)
            if st[s] != f:
                raise InvalidStar(f"star is not involutive at {f}", f)
        for a, i in enumerate(self.ident):
            if st[i] != i:
                raise InvalidStar(f"star moves the identity of {a}", i)
        for (g, f), h in self.comp.items():
            if st[h] != self.comp[(st[f], st[g])]:
                raise InvalidStar(f"star is not contravariant on {(g, f)}", (g, f))

    def _validate_marking(self):
        for f in self.marked:
            if not 0 <= f < self.n_mor:
                raise InvalidMarking(f"marked id {f} is undeclared", f)
        for f in sorted(self.marked):
            if not self.is_unitary(f):
                raise InvalidMarking(f"marked morphism {f} is not unitary", f)
        for i in self.ident:
            if i not in self.marked:
                raise InvalidMarking(f"identity {i} is not marked", i)
        for f in sorted(self.marked):
            if self.star[f] not in self.marked:
                raise InvalidMarking(f"marking not closed under star at {f}", f)
            for g in self._out[self.tgt[f]]:
                if g in self.marked and self.comp[(g, f)] not in self.marked:
                    raise InvalidMarking(f"marking not closed under composition at {(g, f)}", (g, f))


def _index(labels, label, what):
    for i, x in enumerate(labels):
        if x == label or str(x) == str(label):
            return i
    raise KeyError(f"unknown {what} {label!r}")


# small constructors

def point():
    return FinCategory(["*"], [("id", 0, 0)], [0], {(0, 0): 0}, star=[0], marked=[0])


def empty():
    return FinCategory([], [], [], {}, star=[], marked=[])


def discrete(n):
    return FinCategory(range(n), [(f"id{a}", a, a) for a in range(n)], range(n),
                       {(a, a): a for a in range(n)}, star=range(n), marked=range(n))


def indiscrete(n, labels=None):
    """Indiscrete groupoid on n objects with star = inverse, everything marked."""
    labels = list(range(n)) if labels is None else list(labels)
    mors = [(f"{labels[a]}->{labels[b]}", a, b) for a in range(n) for b in range(n)]
    idx = {(a, b): a * n + b for a in range(n) for b in range(n)}
    comp = {(idx[b, c], idx[a, b]): idx[a, c]
            for a in range(n) for b in range(n) for c in range(n)}
    star = [idx[b, a] for a in range(n) for b in range(n)]
    return FinCategory(labels, mors, [idx[a, a] for a in range(n)], comp,
                       star=star, marked=range(n * n))


def walking_arrow():
    return FinCategory([0, 1], [("id0", 0, 0), ("id1", 1, 1), ("f", 0, 1)], [0, 1],
                       {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2})


def groupoid_star(G, marked="all"):
    """Equip a finite groupoid with star = inverse; marking 'all', 'identities' or None."""
    star = [G.inverse(f) for f in range(G.n_mor)]
    if any(s is None for s in star):
        raise CategoryError("not a groupoid", star.index(None))
    mk = {"all": range(G.n_mor), "identities": G.ident, None: None}[marked]
    return FinCategory(G.objects, zip(G.mor_labels, G.src, G.tgt), G.ident, G.comp,
                       star=star, marked=mk)


# functors

class Functor:
    __slots__ = ("dom", "cod", "ob", "mor")

    def __init__(self, dom, cod, ob, mor):
        self.dom = dom
        self.cod = cod
        self.ob = tuple(ob)
        self.mor = tuple(mor)

    def __eq__(self, other):
        return isinstance(other, Functor) and self.ob == other.ob and self.mor == other.mor

    def __hash__(self):
        return hash((self.ob, self.mor))

    def __repr__(self):
        return f"Functor(ob={self.ob}, mor={self.mor})"

    def key(self):
        return (self.ob, self.mor)

    def then(self, other):
        """other ∘ self"""
        return Functor(self.dom, other.cod, [other.ob[x] for x in self.ob],
                       [other.mor[f] for f in self.mor])


def identity_functor(C):
    return Functor(C, C, range(C.n_obj), range(C.n_mor))


def compose_functors(G, F):
    return F.then(G)


def check_functor(F, star=None, marking=None):
    """Verdict on functoriality (and star/marking preservation where both sides have it)."""
    A, B = F.dom, F.cod
    if len(F.ob) != A.n_obj or len(F.mor) != A.n_mor:
        return Verdict(False, ("shape", None))
    for f in range(A.n_mor):
        if B.src[F.mor[f]] != F.ob[A.src[f]] or B.tgt[F.mor[f]] != F.ob[A.tgt[f]]:
            return Verdict(False, ("ends", f))
    for a in range(A.n_obj):
        if F.mor[A.ident[a]] != B.ident[F.ob[a]]:
            return Verdict(False, ("identity", a))
    for (g, f), h in A.comp.items():
        if B.comp[(F.mor[g], F.mor[f])] != F.mor[h]:
            return Verdict(False, ("composition", (g, f)))
    if star is None:
        star = A.star is not None and B.star is not None
    if marking is None:
        marking = A.marked is not None and B.marked is not None
    if star:
        for f in range(A.n_mor):
            if F.mor[A.star[f]] != B.star[F.mor[f]]:
                return Verdict(False, ("star", f))
    if marking:
        for f in sorted(A.marked):
            if F.mor[f] not in B.marked:
                return Verdict(False, ("marking", f))
    return Verdict(True)


class _Budget:
    def __init__(self, bound):
        self.bound = bound
        self.count = 0

    def tick(self, n=1):
        self.count += n
        if self.count > self.bound:
            raise BoundExceeded(self.count, self.bound)


def _plan(A, star):
    """Assignment order for non-identity morphisms plus the checks and forcing
    rules that fire at each position."""
    order = [f for f in range(A.n_mor) if not A.is_identity(f)]
    pos = {f: k for k, f in enumerate(order)}
    checks = [[] for _ in order]
    forced = [None] * len(order)
    for (g, f), h in sorted(A.comp.items()):
        if A.is_identity(g) or A.is_identity(f):
            continue
        pg, pf, ph = pos[g], pos[f], pos.get(h, -1)
        mx = max(pg, pf, ph)
        checks[mx].append((g, f, h))
        if ph == mx and ph > max(pg, pf) and forced[ph] is None:
            forced[ph] = ("c", g, f)
    if star:
        for f in order:
            s = A.star[f]
            ps = pos[s]
            if ps <= pos[f]:
                checks[pos[f]].append(("*", s, f))
                if ps < pos[f] and forced[pos[f]] is None:
                    forced[pos[f]] = ("*", s)
    return order, checks, forced


def iter_functors(A, B, bound=DEFAULT_BOUND, ob_candidates=None, mor_candidates=None,
                  star=None, marking=None, injective=False, budget=None):
    """Yield all functors A -> B in lexicographic order (objects, then morphisms).

    ``star``/``marking`` default to preserving whatever structure both sides
    carry.  ``ob_candidates[a]`` and ``mor_candidates[f]`` (None entries mean
    unrestricted) narrow the search; ``injective`` asks for injectivity on
    objects and morphisms.
    """
    if star is None:
        star = A.star is not None and B.star is not None
    if marking is None:
        marking = A.marked is not None and B.marked is not None
    nA, nB = A.n_obj, B.n_obj
    if ob_candidates is None:
        size = nB ** nA
        if size > bound:
            raise BoundExceeded(size, bound)
    budget = budget or _Budget(bound)
    obc = [list(range(nB)) if ob_candidates is None or ob_candidates[a] is None
           else list(ob_candidates[a]) for a in range(nA)]
    morc = None
    if mor_candidates is not None:
        morc = [None if c is None else set(c) for c in mor_candidates]
    order, checks, forced = _plan(A, star)
    Bmarked = B.marked if marking else None
    Amarked = A.marked if marking else frozenset()

    # object pruning: for each pair of objects with a non-identity morphism
    # between them, the image hom must offer at least one candidate
    need = {}
    for f in order:
        s, t = A.src[f], A.tgt[f]
        need.setdefault(max(s, t), set()).add((s, t))

    Fo = [None] * nA
    Fm = [None] * A.n_mor
    used_o = set()
    used_m = set()

    def hom_ok(s, t):
        return bool(B.hom(Fo[s], Fo[t]))

    def mor_search(k):
        if k == len(order):
            yield Functor(A, B, Fo, Fm)
            return
        f = order[k]
        a, b = Fo[A.src[f]], Fo[A.tgt[f]]
        rule = forced[k]
        if rule is None:
            cands = B.hom(a, b)
        elif rule[0] == "c":
            cands = (B.comp[(Fm[rule[1]], Fm[rule[2]])],)
        else:
            cands = (B.star[Fm[rule[1]]],)
        fmarked = f in Amarked
        for c in cands:
            budget.tick()
            if fmarked and c not in Bmarked:
                continue
            if morc is not None and morc[f] is not None and c not in morc[f]:
                continue
            if injective and c in used_m:
                continue
            Fm[f] = c
            ok = True
            for chk in checks[k]:
                if chk[0] == "*":
                    if Fm[chk[1]] != B.star[Fm[chk[2]]]:
                        ok = False
                        break
                else:
                    g, ff, h = chk
                    if B.comp[(Fm[g], Fm[ff])] != Fm[h]:
                        ok = False
                        break
            if ok:
                if injective:
                    used_m.add(c)
                yield from mor_search(k + 1)
                if injective:
                    used_m.discard(c)
        Fm[f] = None

    def ob_search(a):
        if a == nA:
            for x in range(nA):
                i = A.ident[x]
                Fm[i] = B.ident[Fo[x]]
                if morc is not None and morc[i] is not None and Fm[i] not in morc[i]:
                    return
            if injective:
                used_m.clear()
                used_m.update(Fm[A.ident[x]] for x in range(nA))
            yield from mor_search(0)
            return
        for c in obc[a]:
            budget.tick()
            if injective and c in used_o:
                continue
            Fo[a] = c
            if all(hom_ok(s, t) for s, t in need.get(a, ())):
                used_o.add(c)
                yield from ob_search(a + 1)
                used_o.discard(c)
        Fo[a] = None

    yield from ob_search(0)


def enumerate_functors(A, B, bound=DEFAULT_BOUND, **kw):
    return list(iter_functors(A, B, bound=bound, **kw))


def find_isomorphism(A, B, bound=DEFAULT_BOUND):
    """First isomorphism A -> B preserving star and marking, or None."""
    if (A.n_obj, A.n_mor) != (B.n_obj, B.n_mor):
        return None
    if (A.star is None) != (B.star is None) or (A.marked is None) != (B.marked is None):
        return None
    if A.marked is not None and len(A.marked) != len(B.marked):
        return None
    sig_a = [_signature(A, a) for a in range(A.n_obj)]
    sig_b = [_signature(B, b) for b in range(B.n_obj)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    cands = [[b for b in range(B.n_obj) if sig_b[b] == sig_a[a]] for a in range(A.n_obj)]
    for F in iter_functors(A, B, bound=bound, ob_candidates=cands, injective=True):
        return F
    return None


def _signature(C, a):
    loops = len(C.hom(a, a))
    out = sorted(len(C.hom(a, b)) for b in range(C.n_obj))
    inn = sorted(len(C.hom(b, a)) for b in range(C.n_obj))
    return (loops, tuple(out), tuple(inn))


# natural transformations

class NatTransformation:
    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = tuple(components)

    def __repr__(self):
        return f"NatTransformation({self.components})"


def check_natural(t):
    """Verdict; the witness is the first morphism whose square fails."""
    F, G = t.source, t.target
    A, B = F.dom, F.cod
    if G.dom is not A and G.dom.key() != A.key():
        raise ValueError("functors do not share a domain")
    eta = t.components
    for f in range(A.n_mor):
        a, b = A.src[f], A.tgt[f]
        if B.src[eta[a]] != F.ob[a] or B.tgt[eta[a]] != G.ob[a]:
            return Verdict(False, f)
        if B.comp[(G.mor[f], eta[a])] != B.comp[(eta[b], F.mor[f])]:
            return Verdict(False, f)
    return Verdict(True)


def iter_transformations(F, G, allowed=None, bound=DEFAULT_BOUND):
    """Yield component tuples of natural transformations F => G.

    ``allowed`` optionally restricts components (a set of morphism ids).
    """
    A, B = F.dom, F.cod
    n = A.n_obj
    budget = _Budget(bound)
    squares = [[] for _ in range(n)]
    for f in range(A.n_mor):
        if not A.is_identity(f):
            squares[max(A.src[f], A.tgt[f])].append(f)
    eta = [None] * n

    def search(a):
        if a == n:
            yield tuple(eta)
            return
        for c in B.hom(F.ob[a], G.ob[a]):
            budget.tick()
            if allowed is not None and c not in allowed:
                continue
            eta[a] = c
            if all(B.comp[(G.mor[f], eta[A.src[f]])] == B.comp[(eta[A.tgt[f]], F.mor[f])]
                   for f in squares[a]):
                yield from search(a + 1)
        eta[a] = None

    yield from search(0)


def find_natural_iso(F, G, allowed=None, bound=DEFAULT_BOUND):
    """Components of a natural isomorphism F => G with components in ``allowed``
    (default: all isomorphisms), or None."""
    B = F.cod
    if allowed is None:
        allowed = {f for f in range(B.n_mor) if B.inverse(f) is not None}
    for eta in iter_transformations(F, G, allowed, bound):
        return eta
    return None


# equivalences

def is_equivalence(F):
    """Fully faithful and essentially surjective; witness on failure."""
    A, B = F.dom, F.cod
    for a in range(A.n_obj):
        for a2 in range(A.n_obj):
            image = [F.mor[f] for f in A.hom(a, a2)]
            if len(set(image)) != len(image):
                return Verdict(False, ("not faithful", (a, a2)))
            if len(image) != len(B.hom(F.ob[a], F.ob[a2])):
                return Verdict(False, ("not full", (a, a2)))
    return essentially_surjective(F, None)


def essentially_surjective(F, allowed):
    """Every object of the codomain is reached from the image through a
    morphism in ``allowed`` (default: any isomorphism)."""
    B = F.cod
    image = set(F.ob)
    for b in range(B.n_obj):
        if b in image:
            continue
        hit = False
        for x in image:
            for f in B.hom(x, b):
                if (f in allowed) if allowed is not None else B.inverse(f) is not None:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return Verdict(False, ("not essentially surjective", b))
    return Verdict(True)


def equivalence_by_search(F, allowed_a=None, allowed_b=None, bound=DEFAULT_BOUND,
                          marking=None):
    """Definitional check: search G with F∘G ≅ id and G∘F ≅ id.

    Components of the isomorphisms are drawn from ``allowed_a``/``allowed_b``
    (default: isomorphisms).  Returns a Verdict whose witness is
    ``(G, eta_B, eta_A)`` when found.
    """
    A, B = F.dom, F.cod
    idA, idB = identity_functor(A), identity_functor(B)
    for G in iter_functors(B, A, bound=bound, marking=marking):
        FG = G.then(F)
        eta_b = find_natural_iso(FG, idB, allowed_b, bound)
        if eta_b is None:
            continue
        GF = F.then(G)
        eta_a = find_natural_iso(GF, idA, allowed_a, bound)
        if eta_a is not None:
            return Verdict(True, (G, eta_b, eta_a))
    return Verdict(False, None)


# limits

class Limit(NamedTuple):
    category: FinCategory
    projections: list


def finite_limit(index, cats, maps, bound=DEFAULT_BOUND):
    """Limit of a diagram ``index -> Cat``.

    ``cats[i]`` is the category at index object ``i`` and ``maps[u]`` the
    functor for index morphism ``u`` (identities may be omitted).  Objects
    and morphisms are the set-level limits; structure is componentwise.
    Star and marking are carried when every category has them.
    """
    n = index.n_obj
    arrows = [(u, maps[u]) for u in sorted(maps) if not index.is_identity(u)]
    budget = _Budget(bound)

    def families(count, attr):
        # attr selects .ob or .mor
        by_tgt = [[] for _ in range(n)]
        for u, F in arrows:
            by_tgt[max(index.src[u], index.tgt[u])].append((u, F))
        x = [None] * n

        def search(i):
            if i == n:
                yield tuple(x)
                return
            for c in range(count(i)):
                budget.tick()
                x[i] = c
                if all(getattr(F, attr)[x[index.src[u]]] == x[index.tgt[u]]
                       for u, F in by_tgt[i]):
                    yield from search(i + 1)
            x[i] = None

        return list(search(0))

    obs = families(lambda i: cats[i].n_obj, "ob")
    mors = families(lambda i: cats[i].n_mor, "mor")
    ob_id = {x: k for k, x in enumerate(obs)}
    mor_id = {x: k for k, x in enumerate(mors)}
    morphisms = [(m, ob_id[tuple(cats[i].src[m[i]] for i in range(n))],
                  ob_id[tuple(cats[i].tgt[m[i]] for i in range(n))]) for m in mors]
    ident = [mor_id[tuple(cats[i].ident[x[i]] for i in range(n))] for x in obs]
    comp = {}
    by_src = {}
    for k, (m, s, t) in enumerate(morphisms):
        by_src.setdefault(s, []).append(k)
    for k, (m, s, t) in enumerate(morphisms):
        for k2 in by_src.get(t, ()):
            m2 = morphisms[k2][0]
            comp[(k2, k)] = mor_id[tuple(cats[i].comp[(m2[i], m[i])] for i in range(n))]
    star = marked = None
    if all(c.star is not None for c in cats):
        star = [mor_id[tuple(cats[i].star[m[i]] for i in range(n))] for m in mors]
    if all(c.marked is not None for c in cats):
        marked = [k for k, m in enumerate(mors) if all(m[i] in cats[i].marked for i in range(n))]
    L = FinCategory(obs, morphisms, ident, comp, star=star, marked=marked)
    projections = [Functor(L, cats[i], [x[i] for x in obs], [m[i] for m in mors])
                   for i in range(n)]
    return Limit(L, projections)


def product(A, B):
    """Binary product via :func:`finite_limit` over the discrete index."""
    return finite_limit(discrete(2), [A, B], {})


# export

def to_json(C):
    """The category in the JSON table format (labels rendered as strings)."""
    ol = [str(x) for x in C.objects]
    ml = [str(x) for x in C.mor_labels]
    data = {
        "objects": ol,
        "morphisms": [{"id": ml[f], "src": ol[C.src[f]], "tgt": ol[C.tgt[f]]}
                      for f in range(C.n_mor)],
        "identity": {ol[a]: ml[C.ident[a]] for a in range(C.n_obj)},
        "compose": [[ml[g], ml[f], ml[h]] for (g, f), h in sorted(C.comp.items())],
    }
    if C.star is not None:
        data["star"] = {ml[f]: ml[C.star[f]] for f in range(C.n_mor)}
    if C.marked is not None:
        data["marked"] = [ml[f] for f in sorted(C.marked)]
    return data


def validate_category(data, check=True):
    """Build a FinCategory from the JSON table format, validating it."""
    try:
        ol = [str(x) for x in data["objects"]]
        obj = {x: k for k, x in enumerate(ol)}
        if len(obj) != len(ol):
            raise CategoryError("duplicate object ids", None)
        mors = data["morphisms"]
        ml = [str(m["id"]) for m in mors]
        mid = {x: k for k, x in enumerate(ml)}
        if len(mid) != len(ml):
            raise CategoryError("duplicate morphism ids", None)
        triples = []
        for m in mors:
            s, t = str(m["src"]), str(m["tgt"])
            if s not in obj or t not in obj:
                raise DanglingComposite(f"morphism {m['id']} has undeclared ends", str(m["id"]))
            triples.append((str(m["id"]), obj[s], obj[t]))
        ident_data = {str(k): str(v) for k, v in data["identity"].items()}
        ident = []
        for x in ol:
            if x not in ident_data:
                raise MissingIdentity(f"object {x} has no identity", x)
            if ident_data[x] not in mid:
                raise MissingIdentity(f"identity of {x} is undeclared", x)
            ident.append(mid[ident_data[x]])
        comp = {}
        for entry in data["compose"]:
            g, f, h = (str(v) for v in entry)
            if g not in mid or f not in mid or h not in mid:
                raise DanglingComposite(f"composite {[g, f, h]} uses undeclared ids", (g, f, h))
            comp[(mid[g], mid[f])] = mid[h]
        star = marked = None
        if "star" in data:
            sd = {str(k): str(v) for k, v in data["star"].items()}
            missing = [x for x in ml if x not in sd or sd[x] not in mid]
            if missing:
                raise InvalidStar(f"star undefined on {missing[0]}", missing[0])
            star = [mid[sd[x]] for x in ml]
        if "marked" in data:
            bad = [str(x) for x in data["marked"] if str(x) not in mid]
            if bad:
                raise InvalidMarking(f"marked id {bad[0]} is undeclared", bad[0])
            marked = [mid[str(x)] for x in data["marked"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed category data: {exc!r}", str(exc).strip("'")) from exc
    C = FinCategory(ol, triples, ident, comp, star=star, marked=marked, check=False)
    if check:
        try:
            C.validate()
        except CategoryError as exc:
            exc.witness = _relabel(C, exc)
            raise
    return C


def _relabel(C, exc):
    w = exc.witness
    if isinstance(exc, NonAssociative) or isinstance(exc, DanglingComposite):
        if isinstance(w, tuple) and all(isinstance(x, int) for x in w):
            return tuple(C.mor_labels[x] if x < C.n_mor else x for x in w)
    if isinstance(w, int) and isinstance(exc, (MissingIdentity,)) and "object" in str(exc):
        return C.objects[w]
    if isinstance(w, int) and w < C.n_mor:
        return C.mor_labels[w]
    if isinstance(w, tuple) and all(isinstance(x, int) and x < C.n_mor for x in w):
        return tuple(C.mor_labels[x] for x in w)
    return w


def to_dot(C, name="C"):
    lines = [f"digraph {name} {{"]
    for a, x in enumerate(C.objects):
        lines.append(f'  n{a} [label="{x}"];')
    for f in range(C.n_mor):
        if C.is_identity(f):
            continue
        style = ""
        if C.marked is not None and f in C.marked:
            style = ", style=bold"
        lines.append(f'  n{C.src[f]} -> n{C.tgt[f]} [label="{C.mor_labels[f]}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def all_composable_triples(C):
    for f in range(C.n_mor):
        for g in C.out_of(C.tgt[f]):
            for h in C.out_of(C.tgt[g]):
                yield h, g, f


def category_from_table(objects, morphisms, compose_fn, star=None, marked=None):
    """Convenience: build a category from a composition function on ids."""
    n = len(morphisms)
    src = [m[1] for m in morphisms]
    tgt = [m[2] for m in morphisms]
    comp = {}
    for f, g in itertools.product(range(n), repeat=2):
        if tgt[f] == src[g]:
            comp[(g, f)] = compose_fn(g, f)
    ident = [next(f for f in range(n) if src[f] == tgt[f] == a and all(
        comp.get((g, f)) == g for g in range(n) if src[g] == a)) for a in range(len(objects))]
    return FinCategory(objects, morphisms, ident, comp, star=star, marked=marked)
