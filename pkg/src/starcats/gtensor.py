"""Tensoring and cotensoring with finite groupoids.

* ``sharp(A, G)``: the tensor A♯G (pairs of morphisms, star (f, φ)* = (f*, φ⁻¹))
  or, for linear A, A⊗G with direct-sum hom spaces;
* ``funu(G, A)``: unitary functors G -> A and all natural transformations;
* the exponential law relating the two;
* fundamental groupoids of 2-truncated simplicial sets, kept as presentations;
* simplicial mapping spaces built from indiscrete groupoids.
"""

from typing import NamedTuple

from .fincat import (BoundExceeded, CategoryError, DEFAULT_BOUND, FinCategory, Functor, ParseError,
                     Verdict, check_functor, enumerate_functors, indiscrete, iter_functors,
                     iter_transformations)
from .linear import (LinearStarCategory, LinFunctor, LinMor, build_from_ambient,
                     check_linear_functor, enumerate_linear_functors, marked_groupoid,
                     sharp_tensor)
from .scalars import nullspace, vsub, vunit


def _groupoid_inverse(G):
    inv = [G.inverse(f) for f in range(G.n_mor)]
    if any(x is None for x in inv):
        raise CategoryError("second factor must be a groupoid", inv.index(None))
    return inv


def sharp(A, G):
    """A♯G for a finite (marked) *-category, A⊗G for a linear one."""
    if isinstance(A, LinearStarCategory):
        _groupoid_inverse(G)
        return sharp_tensor(A, G)
    inv = _groupoid_inverse(G)
    pairs = [(a, g) for a in range(A.n_obj) for g in range(G.n_obj)]
    oid = {x: k for k, x in enumerate(pairs)}
    mpairs = [(f, p) for f in range(A.n_mor) for p in range(G.n_mor)]
    mid = {x: k for k, x in enumerate(mpairs)}
    morphisms = [((A.mor_labels[f], G.mor_labels[p]),
                  oid[(A.src[f], G.src[p])], oid[(A.tgt[f], G.tgt[p])]) for f, p in mpairs]
    comp = {}
    for (f, p), k in mid.items():
        for f2 in A.out_of(A.tgt[f]):
            for p2 in G.out_of(G.tgt[p]):
                comp[(mid[(f2, p2)], k)] = mid[(A.comp[(f2, f)], G.comp[(p2, p)])]
    ident = [mid[(A.ident[a], G.ident[g])] for a, g in pairs]
    star = None
    if A.star is not None:
        star = [mid[(A.star[f], inv[p])] for f, p in mpairs]
    marked = None
    if A.marked is not None:
        marked = [k for k, (f, p) in enumerate(mpairs) if f in A.marked]
    S = FinCategory([(A.objects[a], G.objects[g]) for a, g in pairs], morphisms, ident, comp,
                    star=star, marked=marked)
    S.pairs, S.oid, S.mor_pairs, S.mid = pairs, oid, mpairs, mid
    return S


def sharp_map(F, u, S=None, T=None):
    """F♯u : A♯G -> A'♯G' for functors F: A -> A' and u: G -> G'."""
    S = S or sharp(F.dom, u.dom)
    T = T or sharp(F.cod, u.cod)
    ob = [T.oid[(F.ob[a], u.ob[g])] for a, g in S.pairs]
    mor = [T.mid[(F.mor[f], u.mor[p])] for f, p in S.mor_pairs]
    return Functor(S, T, ob, mor)


def funu(G, A, bound=DEFAULT_BOUND):
    """Unitary functor category: functors G -> A sending every morphism to a
    unitary (a marked morphism when A is marked) and all natural
    transformations, with componentwise star and marking."""
    if isinstance(A, LinearStarCategory):
        return _funu_linear(G, A, bound)
    allowed = set(A.special_isos())
    cands = [allowed] * G.n_mor
    functors = enumerate_functors(G, A, bound=bound, mor_candidates=cands,
                                  star=False, marking=False)
    obj_of = {F.key(): k for k, F in enumerate(functors)}
    morphisms, comps = [], []
    for i, F in enumerate(functors):
        for j, F2 in enumerate(functors):
            for eta in iter_transformations(F, F2, bound=bound):
                morphisms.append(((i, j, eta), i, j))
                comps.append(eta)
                if len(morphisms) > bound:
                    raise BoundExceeded(len(morphisms), bound)
    mor_of = {m[0]: k for k, m in enumerate(morphisms)}
    out = {}
    for k, (_, i, j) in enumerate(morphisms):
        out.setdefault(i, []).append(k)
    n = G.n_obj
    comp = {}
    for k, (_, i, j) in enumerate(morphisms):
        eta = comps[k]
        for k2 in out.get(j, ()):
            th = comps[k2]
            l = morphisms[k2][2]
            comp[(k2, k)] = mor_of[(i, l, tuple(A.comp[(th[g], eta[g])] for g in range(n)))]
    ident = [mor_of[(i, i, tuple(A.ident[F.ob[g]] for g in range(n)))]
             for i, F in enumerate(functors)]
    star = None
    if A.star is not None:
        star = [mor_of[(j, i, tuple(A.star[x] for x in comps[k]))]
                for k, (_, i, j) in enumerate(morphisms)]
    marked = None
    if A.marked is not None:
        marked = [k for k, eta in enumerate(comps) if all(x in A.marked for x in eta)]
    R = FinCategory([F.key() for F in functors], morphisms, ident, comp, star=star, marked=marked)
    R.functors, R.components, R.obj_of, R.mor_of = functors, comps, obj_of, mor_of
    R.groupoid, R.base = G, A
    return R


def _funu_linear(G, A, bound):
    if A.marked is None:
        raise ValueError("linear functor categories are built from the marking")
    Ap = marked_groupoid(A)
    functors = enumerate_functors(G, Ap, bound=bound, star=False, marking=False)
    obj_of = {F.key(): k for k, F in enumerate(functors)}
    n = G.n_obj
    elem = Ap.mor_labels

    def offsets(i, j):
        F, F2 = functors[i], functors[j]
        offs, tot = [], 0
        for g in range(n):
            offs.append(tot)
            tot += A.dim(F.ob[g], F2.ob[g])
        return offs, tot

    def split(i, j, v):
        F, F2 = functors[i], functors[j]
        offs, tot = offsets(i, j)
        return [LinMor(F.ob[g], F2.ob[g], v[offs[g]:offs[g] + A.dim(F.ob[g], F2.ob[g])])
                for g in range(n)]

    def join(ms):
        out = ()
        for m in ms:
            out += m.v
        return out

    hom_basis = {}
    for i, F in enumerate(functors):
        for j, F2 in enumerate(functors):
            offs, tot = offsets(i, j)
            rows = []
            for p in range(G.n_mor):
                if G.is_identity(p):
                    continue
                g, h = G.src[p], G.tgt[p]
                # linear map eta -> F2(p)∘eta_g - eta_h∘F(p), one row per output coordinate
                cols = []
                for k in range(tot):
                    comps = split(i, j, vunit(tot, k))
                    lhs = A.compose(elem[F2.mor[p]], comps[g])
                    rhs = A.compose(comps[h], elem[F.mor[p]])
                    cols.append(vsub(lhs.v, rhs.v))
                dim_out = A.dim(F.ob[g], F2.ob[h])
                for r in range(dim_out):
                    rows.append(tuple(cols[k][r] for k in range(tot)))
            hom_basis[(i, j)] = nullspace(rows, tot) if tot else []
            if not hom_basis[(i, j)]:
                del hom_basis[(i, j)]

    def compose_amb(i, j, l, v, w):
        return join(A.compose(y, x) for x, y in zip(split(i, j, v), split(j, l, w)))

    def star_amb(i, j, v):
        return join(A.star(x) for x in split(i, j, v))

    def ident_amb(i):
        F = functors[i]
        return join(A.identity(F.ob[g]) for g in range(n))

    marked_amb = []
    for i, F in enumerate(functors):
        for j, F2 in enumerate(functors):
            for eta in iter_transformations(F, F2, bound=bound):
                marked_amb.append((i, j, join(elem[x] for x in eta)))
    R = build_from_ambient([F.key() for F in functors], hom_basis, compose_amb, star_amb,
                           ident_amb, marked_amb)
    R.functors, R.obj_of, R.groupoid, R.base, R.split = functors, obj_of, G, A, split
    R.join = join
    R.elements = elem
    return R


# exponential law

def exponential_transport(Phi, C, G, A, R=None):
    """Ψ: C -> funu(G, A) from Φ: C♯G -> A, with Ψ(c)(g) = Φ(c, g),
    Ψ(c)(φ) = Φ(id_c, φ) and Ψ(f) = (Φ(f, id_g))_g."""
    if isinstance(Phi, LinFunctor):
        return _transport_linear(Phi, C, G, A, R)
    S = Phi.dom
    R = R or funu(G, A)
    ob = []
    for c in range(C.n_obj):
        key = (tuple(Phi.ob[S.oid[(c, g)]] for g in range(G.n_obj)),
               tuple(Phi.mor[S.mid[(C.ident[c], p)]] for p in range(G.n_mor)))
        ob.append(R.obj_of[key])
    mor = []
    for f in range(C.n_mor):
        eta = tuple(Phi.mor[S.mid[(f, G.ident[g])]] for g in range(G.n_obj))
        mor.append(R.mor_of[(ob[C.src[f]], ob[C.tgt[f]], eta)])
    return Functor(C, R, ob, mor)


def exponential_inverse(Psi, C, G, A, S=None):
    """Φ: C♯G -> A from Ψ, with Φ(f, φ) = Ψ(c')(φ) ∘ Ψ(f)_g for f: c -> c', φ: g -> g'."""
    if isinstance(Psi, LinFunctor):
        return _inverse_linear(Psi, C, G, A, S)
    R = Psi.cod
    S = S or sharp(C, G)
    ob = [R.functors[Psi.ob[c]].ob[g] for c, g in S.pairs]
    mor = []
    for f, p in S.mor_pairs:
        outer = R.functors[Psi.ob[C.tgt[f]]].mor[p]
        inner = R.components[Psi.mor[f]][G.src[p]]
        mor.append(A.comp[(outer, inner)])
    return Functor(S, A, ob, mor)


def _transport_linear(Phi, C, G, A, R):
    S = Phi.dom
    R = R or funu(G, A)
    Ap_index = {m: k for k, m in enumerate(R.elements)}
    oid = {x: k for k, x in enumerate(S.pairs)}

    def image(c, c2, g, g2, p, v):
        x, y = oid[(c, g)], oid[(c2, g2)]
        return Phi(LinMor(x, y, S.embed(x, y, p, v)))

    ob = []
    for c in range(C.n_obj):
        obs = tuple(Phi.ob[oid[(c, g)]] for g in range(G.n_obj))
        mors = tuple(Ap_index[image(c, c, G.src[p], G.tgt[p], p, C.ident[c])]
                     for p in range(G.n_mor))
        ob.append(R.obj_of[(obs, mors)])
    mor = []
    for i in range(C.n_basis):
        c, c2 = C.bsrc[i], C.btgt[i]
        e = C.basis_mor(i).v
        comps = [image(c, c2, g, g, G.ident[g], e) for g in range(G.n_obj)]
        mor.append(R.from_ambient(ob[c], ob[c2], R.join(comps)))
    return LinFunctor(C, R, ob, mor)


def _inverse_linear(Psi, C, G, A, S):
    R = Psi.cod
    S = S or sharp(C, G)
    ob = [R.functors[Psi.ob[c]].ob[g] for c, g in S.pairs]
    mor = []
    for k in range(S.n_basis):
        p, i = S.basis_pairs[k]
        (c, g), c2 = S.pairs[S.bsrc[k]], S.pairs[S.btgt[k]][0]
        psi_b = Psi.mor[i]
        comps = R.split(Psi.ob[c], Psi.ob[c2], R.to_ambient(psi_b))
        outer = R.elements[R.functors[Psi.ob[c2]].mor[p]]
        mor.append(A.compose(outer, comps[g]))
    return LinFunctor(S, A, ob, mor)


def check_exponential_law(C, G, A, bound=DEFAULT_BOUND, coefficients=(0, 1, -1)):
    """Transport is a bijection Hom(C♯G, A) -> Hom(C, funu(G, A)) with
    mutually inverse round trips.  Witness: the common cardinality."""
    S = sharp(C, G)
    R = funu(G, A, bound)
    linear = isinstance(A, LinearStarCategory)
    if linear:
        left = enumerate_linear_functors(S, A, coefficients=coefficients, bound=bound)
        right = enumerate_linear_functors(C, R, coefficients=coefficients, bound=bound)
    else:
        left = enumerate_functors(S, A, bound=bound)
        right = enumerate_functors(C, R, bound=bound)
    right_set = set(right)
    images = []
    for Phi in left:
        Psi = exponential_transport(Phi, C, G, A, R)
        ok = check_linear_functor(Psi) if linear else check_functor(Psi)
        if not ok or Psi not in right_set:
            return Verdict(False, ("transport leaves the hom set", Phi))
        if exponential_inverse(Psi, C, G, A, S) != Phi:
            return Verdict(False, ("round trip", Phi))
        images.append(Psi)
    if len(set(images)) != len(images) or set(images) != right_set:
        return Verdict(False, ("not bijective", (len(left), len(right))))
    for Psi in right:
        Phi = exponential_inverse(Psi, C, G, A, S)
        if exponential_transport(Phi, C, G, A, R) != Psi:
            return Verdict(False, ("round trip", Psi))
    return Verdict(True, len(left))


# simplicial sets and fundamental groupoids

class SimplicialSet:
    """Simplicial set truncated at dimension 2.

    ``s1`` entries are ``(label, d0, d1)`` with vertex indices (d0 is the
    target, d1 the source); ``s2`` entries ``(label, d0, d1, d2)`` with
    edge indices.
    """

    def __init__(self, s0, s1, s2, check=True):
        self.s0 = tuple(s0)
        self.s1 = tuple(s1)
        self.s2 = tuple(s2)
        if check:
            self.validate()

    def validate(self):
        n0, n1 = len(self.s0), len(self.s1)
        for lab, d0, d1 in self.s1:
            if not (0 <= d0 < n0 and 0 <= d1 < n0):
                raise CategoryError(f"1-simplex {lab} has undeclared faces", lab)
        for lab, d0, d1, d2 in self.s2:
            if not all(0 <= x < n1 for x in (d0, d1, d2)):
                raise CategoryError(f"2-simplex {lab} has undeclared faces", lab)
            e = self.s1
            # d_i d_j = d_{j-1} d_i for i < j
            if (e[d1][1] != e[d0][1] or e[d2][1] != e[d0][2] or e[d2][2] != e[d1][2]):
                raise CategoryError(f"simplicial identities fail at {lab}", lab)

    def to_json(self):
        s0 = [str(x) for x in self.s0]
        s1 = [{"id": str(lab), "d0": s0[d0], "d1": s0[d1]} for lab, d0, d1 in self.s1]
        l1 = [str(e[0]) for e in self.s1]
        s2 = [{"id": str(lab), "d0": l1[a], "d1": l1[b], "d2": l1[c]}
              for lab, a, b, c in self.s2]
        return {"s0": s0, "s1": s1, "s2": s2}

    @classmethod
    def from_json(cls, data):
        try:
            s0 = [str(x) for x in data["s0"]]
            v = {x: k for k, x in enumerate(s0)}
            s1 = [(str(e["id"]), v[str(e["d0"])], v[str(e["d1"])]) for e in data["s1"]]
            ed = {e[0]: k for k, e in enumerate(s1)}
            s2 = [(str(t["id"]), ed[str(t["d0"])], ed[str(t["d1"])], ed[str(t["d2"])])
                  for t in data.get("s2", [])]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed simplicial set: {exc!r}", str(exc).strip("'")) from exc
        return cls(s0, s1, s2)


def standard_simplex(n):
    """Δⁿ truncated at dimension 2, degenerate simplices included."""
    verts = list(range(n + 1))
    edges = [(i, j) for i in verts for j in verts if i <= j]
    eid = {e: k for k, e in enumerate(edges)}
    tris = [(i, j, k) for i in verts for j in verts for k in verts if i <= j <= k]
    s1 = [(f"{i}{j}", j, i) for i, j in edges]
    s2 = [(f"{i}{j}{k}", eid[(j, k)], eid[(i, k)], eid[(i, j)]) for i, j, k in tris]
    return SimplicialSet(verts, s1, s2)


def nerve(H):
    """The nerve of a finite category, truncated at dimension 2."""
    s1 = [(H.mor_labels[f], H.tgt[f], H.src[f]) for f in range(H.n_mor)]
    s2 = []
    for f in range(H.n_mor):
        for g in H.out_of(H.tgt[f]):
            s2.append(((H.mor_labels[f], H.mor_labels[g]), g, H.comp[(g, f)], f))
    return SimplicialSet(H.objects, s1, s2)


class GroupoidPresentation:
    """Π(K): vertices, edges as generators (formally invertible) and one
    relation g∘f = h per 2-simplex with d2 = f, d0 = g, d1 = h."""

    def __init__(self, K):
        self.K = K
        self.vertices = list(range(len(K.s0)))
        self.edges = [(d1, d0) for _, d0, d1 in K.s1]
        self.relations = [(d2, d0, d1) for _, d0, d1, d2 in K.s2]

    def hom_into(self, H, bound=DEFAULT_BOUND):
        """All functors Π(K) -> H into a finite groupoid, as (vertex map, edge map).

        A functor out of a groupoid presented this way is an assignment of
        the generators satisfying the relations, so no normal forms are
        needed."""
        if not H.is_groupoid():
            raise CategoryError("target must be a groupoid", None)
        nv, ne = len(self.vertices), len(self.edges)
        if H.n_obj ** nv > bound:
            raise BoundExceeded(H.n_obj ** nv, bound)
        rel_at = [[] for _ in range(ne)]
        for f, g, h in self.relations:
            rel_at[max(f, g, h)].append((f, g, h))
        out = []
        vo = [None] * nv
        em = [None] * ne
        count = [0]

        def edges(k):
            if k == ne:
                out.append((tuple(vo), tuple(em)))
                return
            s, t = self.edges[k]
            for c in H.hom(vo[s], vo[t]):
                count[0] += 1
                if count[0] > bound:
                    raise BoundExceeded(count[0], bound)
                em[k] = c
                if all(H.comp[(em[g], em[f])] == em[h] for f, g, h in rel_at[k]):
                    edges(k + 1)
            em[k] = None

        def verts(k):
            if k == nv:
                edges(0)
                return
            for b in range(H.n_obj):
                vo[k] = b
                verts(k + 1)
            vo[k] = None

        verts(0)
        return out


def fundamental_groupoid(K):
    return GroupoidPresentation(K)


# mapping spaces

class MappingSpace:
    """Map(A, B)[n] = functors A♯I_n -> B, I_n indiscrete on n+1 objects."""

    def __init__(self, A, B, bound=DEFAULT_BOUND):
        self.A, self.B, self.bound = A, B, bound
        self._levels = {}
        self._sharp = {}

    def _S(self, n):
        if n not in self._sharp:
            self._sharp[n] = sharp(self.A, indiscrete(n + 1))
        return self._sharp[n]

    def simplices(self, n):
        if n > 3:
            raise ValueError("mapping spaces are materialized up to dimension 3")
        if n not in self._levels:
            fs = enumerate_functors(self._S(n), self.B, bound=self.bound)
            self._levels[n] = (fs, {F: k for k, F in enumerate(fs)})
        return self._levels[n][0]

    def _induced(self, n, m, mapping):
        # functor A♯I_m -> A♯I_n from the object map [m] -> [n]
        I_m, I_n = indiscrete(m + 1), indiscrete(n + 1)
        u = Functor(I_m, I_n, mapping,
                    [mapping[I_m.src[p]] * (n + 1) + mapping[I_m.tgt[p]] for p in range(I_m.n_mor)])
        ident = Functor(self.A, self.A, range(self.A.n_obj), range(self.A.n_mor))
        return sharp_map(ident, u, self._S(m), self._S(n))

    def face(self, n, i, k):
        """d_i of the k-th n-simplex, as an index into level n-1."""
        delta = [x if x < i else x + 1 for x in range(n)]
        F = self.simplices(n)[k]
        G = self._induced(n, n - 1, delta).then(F)
        self.simplices(n - 1)
        return self._levels[n - 1][1][G]

    def degeneracy(self, n, i, k):
        sigma = [x if x <= i else x - 1 for x in range(n + 2)]
        F = self.simplices(n)[k]
        G = self._induced(n, n + 1, sigma).then(F)
        self.simplices(n + 1)
        return self._levels[n + 1][1][G]

    def check_identities(self, top=2):
        """Face identities d_i d_j = d_{j-1} d_i up to level ``top`` and
        d_i s_i = d_{i+1} s_i = id below it."""
        for n in range(2, top + 1):
            for k in range(len(self.simplices(n))):
                for j in range(n + 1):
                    for i in range(j):
                        a = self.face(n - 1, i, self.face(n, j, k))
                        b = self.face(n - 1, j - 1, self.face(n, i, k))
                        if a != b:
                            return Verdict(False, ("face identity", n, i, j, k))
        for n in range(0, top):
            for k in range(len(self.simplices(n))):
                for i in range(n + 1):
                    s = self.degeneracy(n, i, k)
                    if self.face(n + 1, i, s) != k or self.face(n + 1, i + 1, s) != k:
                        return Verdict(False, ("degeneracy identity", n, i, k))
        return Verdict(True)


def mapping_space(A, B, n, bound=DEFAULT_BOUND):
    return MappingSpace(A, B, bound).simplices(n)


class ExponentialSizes(NamedTuple):
    left: int
    right: int


def hom_sizes(C, G, A, bound=DEFAULT_BOUND):
    """|Hom(C♯G, A)| and |Hom(C, funu(G, A))| for the finite flavour."""
    S = sharp(C, G)
    R = funu(G, A, bound)
    return ExponentialSizes(sum(1 for _ in iter_functors(S, A, bound=bound)),
                            sum(1 for _ in iter_functors(C, R, bound=bound)))
