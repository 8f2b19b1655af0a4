"""*-structures and markings: unitaries, classifiers, representability,
the mi/ma/forget adjunctions, marked subcategories, weak equivalences and
free *-categories given by presentations.

A marked *-category is a :class:`~starcats.fincat.FinCategory` with both
``star`` and ``marked``; an unmarked *-category has ``marked = None``.
"""

from typing import NamedTuple

from . import linear
from .fincat import (DEFAULT_BOUND, CategoryError, FinCategory, Functor, Verdict,
                     enumerate_functors, equivalence_by_search, indiscrete,
                     is_equivalence, point)
from .linear import LinearStarCategory, LinFunctor


class IllTypedAssignment(ValueError):
    pass


def is_unitary(A, f):
    """u*u = id and uu* = id, for a finite or a linear *-category."""
    return A.is_unitary(f)


def unitaries(A):
    return A.unitaries()


def classifier(kind):
    """Finite classifier objects.

    ``object``: one object; ``invertible``: the indiscrete groupoid on two
    objects as a plain category; ``unitary``: two objects joined by u and
    u* = u⁻¹ with only identities marked; ``marked_unitary``: the same with
    u marked.
    """
    if kind == "object":
        return point()
    I = indiscrete(2)
    if kind == "invertible":
        return I.underlying()
    if kind == "unitary":
        return FinCategory([0, 1], [("id0", 0, 0), ("u", 0, 1), ("u*", 1, 0), ("id1", 1, 1)],
                           [0, 3], I.comp, star=I.star, marked=[0, 3])
    if kind == "marked_unitary":
        return FinCategory([0, 1], [("id0", 0, 0), ("u", 0, 1), ("u*", 1, 0), ("id1", 1, 1)],
                           [0, 3], I.comp, star=I.star, marked=range(4))
    raise ValueError(f"unknown classifier kind {kind!r}")


def arrow_presentation():
    """The free *-category on one arrow 0 -> 1, which represents morphisms."""
    return FreeStarPresentation([0, 1], [("a", 0, 1, False)])


class Represented(NamedTuple):
    elements: list
    to_functor: object
    from_functor: object


def represented_hom(kind, B):
    """Ob(B), Mor(B), unitaries(B) or marked(B), with the maps to and from
    Hom(classifier, B)."""
    if kind == "object":
        P = classifier("object")
        return Represented(list(range(B.n_obj)),
                           lambda b: Functor(P, B, [b], [B.ident[b]]),
                           lambda F: F.ob[0])
    if kind == "morphism":
        P = arrow_presentation()
        return Represented(list(range(B.n_mor)),
                           lambda f: free_star_evaluate(P, {0: f}, B),
                           lambda F: F.assignment[0])
    if kind in ("unitary", "marked"):
        if kind == "unitary":
            elements = B.unitaries()
            C = classifier("unitary")
        else:
            if B.marked is None:
                raise ValueError("category carries no marking")
            elements = sorted(B.marked)
            C = classifier("marked_unitary")
        return Represented(elements,
                           lambda u: Functor(C, B, [B.src[u], B.tgt[u]],
                                             [B.ident[B.src[u]], u, B.star[u], B.ident[B.tgt[u]]]),
                           lambda F: F.mor[1])
    raise ValueError(f"unknown kind {kind!r}")


def check_representability(kind, B, bound=DEFAULT_BOUND, word_length=6):
    """Compare the represented set with the enumerated functors out of the
    classifier; both maps must be mutually inverse bijections.  Witness:
    ``(|elements|, |functors|)``.  For the free morphism classifier the
    *-functor laws are checked on words up to ``word_length``."""
    rep = represented_hom(kind, B)
    if kind == "morphism":
        funcs = None
    else:
        C = classifier({"object": "object", "unitary": "unitary",
                        "marked": "marked_unitary"}[kind])
        funcs = enumerate_functors(C, B, bound=bound)
    images = [rep.to_functor(x) for x in rep.elements]
    for x, F in zip(rep.elements, images):
        if rep.from_functor(F) != x:
            return Verdict(False, ("round trip", x))
    if funcs is None:
        for F in images:
            if not F.is_star_functor(word_length):
                return Verdict(False, ("not a *-functor", F.assignment))
        return Verdict(True, (len(rep.elements), len(images)))
    if set(images) != set(funcs) or len(set(images)) != len(images):
        return Verdict(False, ("not bijective", (len(rep.elements), len(funcs))))
    for F in funcs:
        if rep.to_functor(rep.from_functor(F)) != F:
            return Verdict(False, ("round trip", F))
    return Verdict(True, (len(rep.elements), len(funcs)))


# markings

def mi(A):
    """Mark only the identities."""
    if isinstance(A, LinearStarCategory):
        return LinearStarCategory(A.objects, zip(A.basis_labels, A.bsrc, A.btgt), A.ident,
                                  A.table, A.star_table,
                                  [A.identity(a) for a in range(A.n_obj)])
    return A.replace(marked=A.ident)


def ma(A):
    """Mark every unitary."""
    if isinstance(A, LinearStarCategory):
        raise ValueError("unitaries of a linear category over Q(i) need not form a finite set")
    return A.replace(marked=A.unitaries())


def forget_marking(A):
    if isinstance(A, LinearStarCategory):
        return LinearStarCategory(A.objects, zip(A.basis_labels, A.bsrc, A.btgt), A.ident,
                                  A.table, A.star_table, None)
    return A.replace(marked=None)


def forget_star(A):
    return A.underlying()


def mi_ma_forget(A, direction):
    ops = {"mi": mi, "ma": ma, "forget_marking": forget_marking, "forget_star": forget_star}
    if direction not in ops:
        raise ValueError(f"unknown direction {direction!r}")
    return ops[direction](A)


def marked_subcategory(A):
    """A⁺: same objects, marked morphisms; a groupoid.

    Unmarked *-categories use their unitaries (the marking of ma(A)).
    The result records ``inclusion[k]`` = morphism id in A.
    """
    if isinstance(A, LinearStarCategory):
        return linear.marked_groupoid(A)
    keep = A.special_isos()
    idx = {f: k for k, f in enumerate(keep)}
    comp = {(idx[g], idx[f]): idx[h] for (g, f), h in A.comp.items()
            if g in idx and f in idx}
    P = FinCategory(A.objects, [(A.mor_labels[f], A.src[f], A.tgt[f]) for f in keep],
                    [idx[i] for i in A.ident], comp,
                    star=[idx[A.star[f]] for f in keep], marked=range(len(keep)))
    P.inclusion = tuple(keep)
    return P


def plus_functor(F, marked=True):
    """Restriction of F to marked subcategories (ma(F)⁺ when marked is False)."""
    A, B = F.dom, F.cod
    if not marked:
        A, B = ma(A.replace(marked=None)), ma(B.replace(marked=None))
    Ap, Bp = marked_subcategory(A), marked_subcategory(B)
    back = {f: k for k, f in enumerate(Bp.inclusion)}
    mor = []
    for f in Ap.inclusion:
        g = F.mor[f]
        if g not in back:
            raise CategoryError("functor does not preserve the marking", f)
        mor.append(back[g])
    return Functor(Ap, Bp, F.ob, mor)


def _is_marked_setting(F, marked):
    if marked is None:
        return F.dom.marked is not None and F.cod.marked is not None
    return marked


def is_weak_equivalence(F, marked=None):
    """Both the underlying functor and its restriction to marked (or, for
    unmarked categories, unitary) subcategories are equivalences."""
    if isinstance(F, LinFunctor):
        return linear.is_weak_equivalence_linear(F)
    marked = _is_marked_setting(F, marked)
    v = is_equivalence(F)
    if not v:
        return Verdict(False, ("underlying",) + tuple(v.witness))
    if not marked and (F.dom.star is None or F.cod.star is None):
        # plain categories: equivalences already restrict to the cores
        return Verdict(True)
    v = is_equivalence(plus_functor(F, marked))
    if not v:
        return Verdict(False, ("marked" if marked else "unitary",) + tuple(v.witness))
    return Verdict(True)


def weak_equivalence_by_search(F, marked=None, bound=DEFAULT_BOUND):
    """Search for a *-functor g with f∘g and g∘f isomorphic to identities
    through (marked) unitary natural isomorphisms."""
    marked = _is_marked_setting(F, marked)
    A, B = F.dom, F.cod
    if marked:
        allowed_a, allowed_b = set(A.marked), set(B.marked)
    elif A.star is None or B.star is None:
        allowed_a = allowed_b = None
    else:
        allowed_a, allowed_b = set(A.unitaries()), set(B.unitaries())
    return equivalence_by_search(F, allowed_a, allowed_b, bound, marking=marked)


# free *-categories

class FreeStarPresentation:
    """Free *-category on generators ``(label, src, tgt, marked)``.

    A morphism is a reduced word ``(src, tgt, letters)``; letters are
    ``(generator, starred)`` in order of application.  A marked generator
    and its star cancel when adjacent; nothing else reduces, so normal forms
    are unique.
    """

    def __init__(self, objects, generators):
        self.objects = tuple(objects)
        self.generators = tuple(generators)
        for lab, s, t, _ in self.generators:
            if not (0 <= s < len(self.objects) and 0 <= t < len(self.objects)):
                raise CategoryError(f"generator {lab} has undeclared ends", lab)

    def letter_ends(self, letter):
        g, starred = letter
        _, s, t, _ = self.generators[g]
        return (t, s) if starred else (s, t)

    def reduce(self, letters):
        out = []
        for l in letters:
            if out and out[-1][0] == l[0] and out[-1][1] != l[1] and self.generators[l[0]][3]:
                out.pop()
            else:
                out.append(l)
        return tuple(out)

    def word(self, src, letters):
        cur = src
        for l in letters:
            s, t = self.letter_ends(l)
            if s != cur:
                raise CategoryError("ill-typed word", letters)
            cur = t
        return (src, cur, self.reduce(letters))

    def identity(self, a):
        return (a, a, ())

    def compose(self, w2, w1):
        if w1[1] != w2[0]:
            raise CategoryError("words are not composable", (w2, w1))
        return (w1[0], w2[1], self.reduce(w1[2] + w2[2]))

    def star(self, w):
        return (w[1], w[0], tuple((g, not s) for g, s in reversed(w[2])))

    def words(self, max_len=6):
        """All reduced words of length <= max_len, shortest first."""
        out = [self.identity(a) for a in range(len(self.objects))]
        frontier = list(out)
        letters = [(g, s) for g in range(len(self.generators)) for s in (False, True)]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for l in letters:
                    s, t = self.letter_ends(l)
                    if s != w[1]:
                        continue
                    red = self.reduce(w[2] + (l,))
                    if len(red) == len(w[2]) + 1:
                        nxt.append((w[0], t, red))
            out.extend(nxt)
            frontier = nxt
        return out


class FreeStarFunctor:
    """Evaluation of reduced words in a target *-category."""

    def __init__(self, P, B, ob, assignment):
        self.P = P
        self.B = B
        self.ob = tuple(ob)
        self.assignment = dict(assignment)

    def __call__(self, w):
        B = self.B
        cur = B.ident[self.ob[w[0]]]
        for g, starred in w[2]:
            f = self.assignment[g]
            if starred:
                f = B.star[f]
            cur = B.comp[(f, cur)]
        return cur

    def __eq__(self, other):
        return (isinstance(other, FreeStarFunctor) and self.ob == other.ob
                and self.assignment == other.assignment)

    def __hash__(self):
        return hash((self.ob, tuple(sorted(self.assignment.items()))))

    def is_star_functor(self, max_len=6):
        words = self.P.words(max_len)
        B = self.B
        for w in words:
            if self(self.P.star(w)) != B.star[self(w)]:
                return False
            for w2 in words:
                if w2[0] == w[1] and len(w[2]) + len(w2[2]) <= max_len:
                    if self(self.P.compose(w2, w)) != B.comp[(self(w2), self(w))]:
                        return False
        return True


def free_star_evaluate(P, assignment, B, objects=None):
    """The *-functor Free(P) -> B determined by generator images.

    ``objects`` gives images of objects not touched by any generator.
    Marked generators must go to marked morphisms (to unitaries when B is
    unmarked), which forces f* = f⁻¹ on their images.
    """
    ob = [None] * len(P.objects)
    if objects:
        for a, b in dict(objects).items():
            ob[a] = b
    for g, (lab, s, t, mk) in enumerate(P.generators):
        if g not in assignment:
            raise IllTypedAssignment(f"generator {lab} has no image")
        f = assignment[g]
        for end, img in ((s, B.src[f]), (t, B.tgt[f])):
            if ob[end] is None:
                ob[end] = img
            elif ob[end] != img:
                raise IllTypedAssignment(f"generator {lab} sent to a morphism of the wrong type")
        if mk:
            ok = (f in B.marked) if B.marked is not None else B.is_unitary(f)
            if not ok:
                raise IllTypedAssignment(f"marked generator {lab} sent to a non-marked morphism")
    if any(x is None for x in ob):
        raise IllTypedAssignment("some objects have no image")
    return FreeStarFunctor(P, B, ob, assignment)
