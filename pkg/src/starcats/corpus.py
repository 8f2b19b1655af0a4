"""The default corpus of small categories, functors, actions and spaces,
and its JSON representation on disk.

Layout of a corpus directory::

    categories/<name>.json   FinCategory tables
    functors/<name>.json     {"source", "target", "objects", "morphisms"} by name
    actions/<name>.json      {"base", "group", "on_objects", "on_morphisms"}
    spaces/<name>.json       bornological coarse spaces
"""

import json
from pathlib import Path
from typing import NamedTuple

from .controlled import group_space, validate_space
from .equivariant import GAction, action_from_json, bg, build_gtilde, cyclic, trivial_action
from .fincat import (CategoryError, FinCategory, Functor, ParseError, check_functor, discrete,
                     empty, indiscrete, point, to_json, validate_category)
from .gtensor import sharp
from .starcat import classifier


def projection_category():
    """One object, a selfadjoint idempotent p."""
    return FinCategory(["*"], [("id", 0, 0), ("p", 0, 0)], [0],
                       {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}, star=[0, 1], marked=[0])


def partial_isometry_category():
    """v: 0 -> 1 with v v* v = v; p = v*v and q = vv* are projections."""
    names = ["id0", "id1", "v", "v*", "p", "q"]
    m = {k: i for i, k in enumerate(names)}
    mors = [("id0", 0, 0), ("id1", 1, 1), ("v", 0, 1), ("v*", 1, 0), ("p", 0, 0), ("q", 1, 1)]
    table = {("v*", "v"): "p", ("v", "v*"): "q", ("p", "p"): "p", ("q", "q"): "q",
             ("v", "p"): "v", ("q", "v"): "v", ("p", "v*"): "v*", ("v*", "q"): "v*"}
    comp = {(m[g], m[f]): m[h] for (g, f), h in table.items()}
    for name, a, b in mors:
        comp[(m[f"id{b}"], m[name])] = m[name]
        comp[(m[name], m[f"id{a}"])] = m[name]
    return FinCategory([0, 1], mors, [0, 1], comp, star=[0, 1, 3, 2, 4, 5], marked=[0, 1])


def default_categories():
    """Named corpus categories (all at most 4 objects and 16 morphisms)."""
    Z2, Z3, Z4 = cyclic(2), cyclic(3), cyclic(4)
    cats = {
        "pt": point(),
        "unitary": classifier("unitary"),
        "marked_unitary": classifier("marked_unitary"),
        "bz2": bg(Z2),
        "bz2_identities": bg(Z2, "identities"),
        "bz3": bg(Z3),
        "bz4": bg(Z4),
        "disc2": discrete(2),
        "ind3": indiscrete(3),
        "empty": empty(),
        "projection": projection_category(),
        "partial_isometry": partial_isometry_category(),
    }
    cats["bz2_sharp_i"] = _plain_labels(sharp(cats["bz2"], indiscrete(2)))
    cats["unitary_unmarked"] = cats["unitary"].replace(marked=None)
    cats["pt_unmarked"] = point().replace(marked=None)
    cats["bz2_unmarked"] = cats["bz2"].replace(marked=None)
    return cats


def _plain_labels(C):
    """Same category with string labels, so it round-trips through JSON."""
    return FinCategory([str(x) for x in C.objects],
                       [(str(l), s, t) for l, s, t in zip(C.mor_labels, C.src, C.tgt)],
                       C.ident, C.comp, star=C.star, marked=C.marked)


def _f(cats, src, tgt, ob, mor):
    return Functor(cats[src], cats[tgt], ob, mor)


def default_functors(cats):
    """Named corpus functors; identities are added for every category."""
    F = {}
    for name, C in cats.items():
        F[f"id_{name}"] = Functor(C, C, range(C.n_obj), range(C.n_mor))
    F.update({
        "pt_to_unitary": _f(cats, "pt", "unitary", [0], [0]),
        "pt_to_marked_unitary": _f(cats, "pt", "marked_unitary", [0], [0]),
        "pt_to_bz2": _f(cats, "pt", "bz2", [0], [0]),
        "pt_to_bz3": _f(cats, "pt", "bz3", [0], [0]),
        "pt_to_ind3": _f(cats, "pt", "ind3", [1], [4]),
        "pt_to_projection": _f(cats, "pt", "projection", [0], [0]),
        "pt_to_partial_isometry": _f(cats, "pt", "partial_isometry", [1], [1]),
        "unitary_to_pt": _f(cats, "unitary", "pt", [0, 0], [0] * 4),
        "marked_unitary_to_pt": _f(cats, "marked_unitary", "pt", [0, 0], [0] * 4),
        "bz2_to_pt": _f(cats, "bz2", "pt", [0], [0, 0]),
        "bz3_to_pt": _f(cats, "bz3", "pt", [0], [0, 0, 0]),
        "ind3_to_pt": _f(cats, "ind3", "pt", [0, 0, 0], [0] * 9),
        "disc2_to_pt": _f(cats, "disc2", "pt", [0, 0], [0, 0]),
        "projection_to_pt": _f(cats, "projection", "pt", [0], [0, 0]),
        "bz2_to_bz4": _f(cats, "bz2", "bz4", [0], [0, 2]),
        "bz4_to_bz2": _f(cats, "bz4", "bz2", [0], [0, 1, 0, 1]),
        "disc2_to_marked_unitary": _f(cats, "disc2", "marked_unitary", [0, 1], [0, 3]),
        "disc2_to_unitary": _f(cats, "disc2", "unitary", [0, 1], [0, 3]),
        "unitary_to_marked_unitary": _f(cats, "unitary", "marked_unitary", [0, 1], [0, 1, 2, 3]),
        "marked_unitary_swap": _f(cats, "marked_unitary", "marked_unitary", [1, 0], [3, 2, 1, 0]),
        "marked_unitary_to_ind3": _f(cats, "marked_unitary", "ind3", [0, 1], [0, 1, 3, 4]),
        "bz2_identities_to_bz2": _f(cats, "bz2_identities", "bz2", [0], [0, 1]),
        "bz2_to_bz2_sharp_i": _f(cats, "bz2", "bz2_sharp_i", [0], [0, 4]),
        "bz2_sharp_i_to_bz2": _f(cats, "bz2_sharp_i", "bz2", [0, 0], [0, 0, 0, 0, 1, 1, 1, 1]),
        "pt_unmarked_to_unitary_unmarked": _f(cats, "pt_unmarked", "unitary_unmarked", [0], [0]),
        "unitary_unmarked_to_pt_unmarked": _f(cats, "unitary_unmarked", "pt_unmarked",
                                              [0, 0], [0] * 4),
        "pt_unmarked_to_bz2_unmarked": _f(cats, "pt_unmarked", "bz2_unmarked", [0], [0]),
        "bz2_unmarked_to_pt_unmarked": _f(cats, "bz2_unmarked", "pt_unmarked", [0], [0, 0]),
    })
    return F


def default_actions(cats):
    Z2, Z3 = cyclic(2), cyclic(3)
    swap = build_gtilde(Z2)
    I = cats["marked_unitary"]
    swap_mu = GAction(Z2, I, [Functor(I, I, F.ob, F.mor) for F in swap.maps])
    D = cats["disc2"]
    swap_disc = GAction(Z2, D, [Functor(D, D, [0, 1], [0, 1]), Functor(D, D, [1, 0], [1, 0])])
    B2 = cats["bz2"]
    rot3 = build_gtilde(Z3)
    Ind3 = cats["ind3"]
    rot_ind3 = GAction(Z3, Ind3, [Functor(Ind3, Ind3, F.ob, F.mor) for F in rot3.maps])
    return {
        "z2_trivial_pt": trivial_action(Z2, cats["pt"]),
        "z2_trivial_bz2": trivial_action(Z2, B2),
        "z2_swap_marked_unitary": swap_mu,
        "z2_swap_disc2": swap_disc,
        "z3_trivial_bz3": trivial_action(Z3, cats["bz3"]),
        "z3_rotate_ind3": rot_ind3,
        "z2_trivial_unitary": trivial_action(Z2, cats["unitary"]),
    }


def default_spaces():
    return {"z2": group_space(cyclic(2)),
            "point": validate_space({"points": ["p"]})}


class Corpus(NamedTuple):
    categories: dict
    functors: dict
    actions: dict
    spaces: dict

    def groupoids(self):
        return {k: C for k, C in self.categories.items() if C.is_groupoid()}


def default_corpus():
    cats = default_categories()
    return Corpus(cats, default_functors(cats), default_actions(cats), default_spaces())


# disk format

def functor_to_json(F, src_name, tgt_name):
    A, B = F.dom, F.cod
    return {"source": src_name, "target": tgt_name,
            "objects": {str(A.objects[x]): str(B.objects[F.ob[x]]) for x in range(A.n_obj)},
            "morphisms": {str(A.mor_labels[f]): str(B.mor_labels[F.mor[f]])
                          for f in range(A.n_mor)}}


def functor_from_json(data, A, B):
    """Functor between given categories from label maps; validated."""
    try:
        ol = {str(x): k for k, x in enumerate(B.objects)}
        ml = {str(x): k for k, x in enumerate(B.mor_labels)}
        ob = [ol[str(data["objects"][str(x)])] for x in A.objects]
        mor = [ml[str(data["morphisms"][str(f)])] for f in A.mor_labels]
    except KeyError as exc:
        raise ParseError(f"functor data misses {exc}", str(exc).strip("'")) from exc
    F = Functor(A, B, ob, mor)
    v = check_functor(F)
    if not v:
        raise CategoryError(f"not a functor: {v.witness[0]}", v.witness)
    return F


def _name_of(corpus_cats, C):
    for k, D in corpus_cats.items():
        if D is C:
            return k
    raise KeyError("category not in corpus")


def write_corpus(directory, corpus=None):
    corpus = corpus or default_corpus()
    root = Path(directory)
    for sub in ("categories", "functors", "actions", "spaces"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    for name, C in corpus.categories.items():
        _dump(root / "categories" / f"{name}.json", to_json(C))
    for name, F in corpus.functors.items():
        data = functor_to_json(F, _name_of(corpus.categories, F.dom),
                               _name_of(corpus.categories, F.cod))
        _dump(root / "functors" / f"{name}.json", data)
    for name, act in corpus.actions.items():
        data = act.to_json()
        data["base"] = _name_of(corpus.categories, act.base)
        _dump(root / "actions" / f"{name}.json", data)
    for name, X in corpus.spaces.items():
        _dump(root / "spaces" / f"{name}.json", X.to_json())
    return root


def _dump(path, data):
    path.write_text(json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n")


def read_corpus(directory):
    """Load a corpus directory; missing subdirectories count as empty."""
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(directory)

    def files(sub):
        d = root / sub
        return sorted(d.glob("*.json")) if d.is_dir() else []

    cats = {p.stem: validate_category(json.loads(p.read_text())) for p in files("categories")}
    functors = {}
    for p in files("functors"):
        data = json.loads(p.read_text())
        functors[p.stem] = functor_from_json(data, cats[data["source"]], cats[data["target"]])
    actions = {}
    for p in files("actions"):
        data = json.loads(p.read_text())
        actions[p.stem] = action_from_json(cats[data["base"]], data)
    spaces = {p.stem: validate_space(json.loads(p.read_text())) for p in files("spaces")}
    return Corpus(cats, functors, actions, spaces)
