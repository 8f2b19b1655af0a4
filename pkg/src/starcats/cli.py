"""The ``starcats`` command.

Structures are given as JSON files or by the name of a built-in corpus
entry (``pt``, ``bz2``, ``id_pt``, ``z2_trivial_pt``, ``z2`` ...).  Reports
are JSON with sorted keys and no timings, so identical inputs give
byte-identical output; timings only appear in the table on stderr.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 bound exceeded.
"""

import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from . import corpus as corpus_mod
from .controlled import build_vplus, equivariant_vplus, validate_space
from .equivariant import action_from_json, cyclic, fixed_points, linearize_action, orbit
from .fincat import (DEFAULT_BOUND, BoundExceeded, CategoryError, FinCategory,
                     ParseError, Verdict, check_functor, to_dot, validate_category)
from .fincat import to_json as category_json
from .gtensor import SimplicialSet, funu, sharp
from .linear import LinearStarCategory, linearize, validate_linear
from .linear import to_json as linear_json
from .model import cylinder, path_object
from .scalars import GaussQ
from .suites import SUITES, Limits, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or ill-typed command input (exit code 2)."""


# serialization

def plain(value):
    """JSON-ready rendering of witnesses and labels."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (Fraction, GaussQ)):
        return str(value)
    if isinstance(value, Verdict):
        return {"ok": value.ok, "witness": plain(value.witness)}
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((plain(v) for v in value), key=repr)
    if isinstance(value, (tuple, list, range)):
        return [plain(v) for v in value]
    if hasattr(value, "ob") and hasattr(value, "mor"):
        return {"objects": plain(value.ob), "morphisms": plain(value.mor)}
    return str(value)


def dumps(data):
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def emit(text, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text)


def structure_json(S):
    if isinstance(S, LinearStarCategory):
        return linear_json(S)
    return category_json(S)


# loading

def detect_kind(data):
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", "<root>")
    if "hom_bases" in data:
        return "linear"
    if "s0" in data:
        return "simplicial"
    if "points" in data:
        return "space"
    if "group" in data and "on_objects" in data:
        return "action"
    if "source" in data and "target" in data:
        return "functor"
    if "objects" in data and "morphisms" in data:
        return "category"
    raise ParseError("cannot tell which structure this file describes", "<root>")


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", f"column {exc.colno}", exc.lineno) from exc


class Loader:
    """Resolves file paths and built-in corpus names to structures."""

    def __init__(self):
        self._corpus = None

    @property
    def corpus(self):
        if self._corpus is None:
            self._corpus = corpus_mod.default_corpus()
        return self._corpus

    def builtin(self, name):
        c = self.corpus
        for kind, table in (("category", c.categories), ("functor", c.functors),
                            ("action", c.actions), ("space", c.spaces)):
            if name in table:
                return kind, table[name]
        raise InputError(f"{name!r} is neither a file nor a built-in corpus entry")

    def load(self, ref, base_dir=None):
        """(kind, structure) for a path, an inline dict or a built-in name."""
        if isinstance(ref, dict):
            return self.from_data(ref, base_dir)
        path = Path(ref)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        if path.is_file():
            return self.from_data(read_json(path), path.parent)
        return self.builtin(str(ref))

    def from_data(self, data, base_dir):
        kind = detect_kind(data)
        if kind == "category":
            return kind, validate_category(data)
        if kind == "linear":
            return kind, validate_linear(data)
        if kind == "simplicial":
            return kind, SimplicialSet.from_json(data)
        if kind == "space":
            return kind, validate_space(data)
        if kind == "functor":
            A = self.category(data["source"], base_dir)
            B = self.category(data["target"], base_dir)
            return kind, corpus_mod.functor_from_json(data, A, B)
        base = self.category(data.get("base"), base_dir)
        try:
            return kind, action_from_json(base, data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CategoryError):
                raise
            raise ParseError(f"malformed action data: {exc!r}", str(exc).strip("'")) from exc

    def category(self, ref, base_dir=None):
        if ref is None:
            raise ParseError("missing category reference", "base")
        kind, C = self.load(ref, base_dir)
        if kind not in ("category", "linear"):
            raise InputError(f"{ref!r} is a {kind}, expected a category")
        return C

    def expect(self, ref, wanted):
        kind, S = self.load(ref)
        if kind != wanted:
            raise InputError(f"{ref!r} is a {kind}, expected a {wanted}")
        return S


# check

def check_report(kind, S):
    """Summary facts about a structure that passed validation."""
    if kind == "category":
        facts = {"objects": S.n_obj, "morphisms": S.n_mor,
                 "star": S.star is not None, "marked": S.marked is not None}
        if S.star is not None:
            facts["unitaries"] = len(S.unitaries())
        if S.marked is not None:
            facts["marked morphisms"] = len(S.marked)
        return facts
    if kind == "linear":
        return {"objects": S.n_obj, "basis": S.n_basis,
                "marked": None if S.marked is None else len(S.marked)}
    if kind == "simplicial":
        return {"vertices": len(S.s0), "edges": len(S.s1), "triangles": len(S.s2)}
    if kind == "space":
        return {"points": S.n, "entourage generators": len(S.generators),
                "group": None if S.group is None else S.group.order}
    if kind == "functor":
        return {"source objects": S.dom.n_obj, "target objects": S.cod.n_obj,
                "star functor": bool(check_functor(S, star=S.dom.star is not None
                                                   and S.cod.star is not None))}
    if kind == "action":
        return {"group order": S.group.order, "base objects": S.base.n_obj}
    return {}


def run_check(path, loader=None):
    """(exit code, report) for one file."""
    loader = loader or Loader()
    report = {"file": str(path)}
    try:
        data = read_json(path)
        kind = detect_kind(data)
        report["kind"] = kind
        _, S = loader.from_data(data, Path(path).parent)
    except (ParseError, InputError) as exc:
        report.update(status="input error", error=str(exc))
        if isinstance(exc, ParseError):
            report.update(field=exc.field, line=exc.line)
        return EXIT_INPUT, report
    except CategoryError as exc:
        report.update(status="fail", error=type(exc).__name__, message=str(exc),
                      witness=plain(exc.witness))
        return EXIT_FAIL, report
    report.update(status="pass", facts=check_report(kind, S))
    return EXIT_OK, report


# construct

def build(kind, refs, options, loader):
    """The constructed category for ``starcats construct``."""
    lin = options["linearize"]
    bound = options["bound"]

    def cat(ref):
        C = loader.category(ref)
        return linearize(C) if lin and isinstance(C, FinCategory) else C

    def arity(n):
        if len(refs) != n:
            raise InputError(f"construct {kind} takes {n} argument(s), got {len(refs)}")

    if kind == "sharp":
        arity(2)
        A, G = cat(refs[0]), loader.category(refs[1])
        if not isinstance(G, FinCategory) or not G.is_groupoid():
            raise InputError("the second argument of sharp must be a finite groupoid")
        return sharp(A, G)
    if kind == "funu":
        arity(2)
        G, A = loader.category(refs[0]), cat(refs[1])
        if not isinstance(G, FinCategory) or not G.is_groupoid():
            raise InputError("the first argument of funu must be a finite groupoid")
        return funu(G, A, bound)
    if kind in ("cylinder", "path"):
        arity(1)
        a = loader.expect(refs[0], "functor")
        return cylinder(a)[0] if kind == "cylinder" else path_object(a)[0]
    if kind == "fixed-points":
        arity(1)
        act = loader.expect(refs[0], "action")
        if lin:
            act = linearize_action(act)
        return fixed_points(act, bound).explicit
    if kind == "orbit":
        arity(1)
        return orbit(cat(refs[0]), cyclic(options["group"]))
    if kind == "vplus":
        arity(1)
        X = loader.expect(refs[0], "space")
        if options["equivariant"]:
            return equivariant_vplus(X, options["max_size"], bound).category
        return build_vplus(X, options["max_size"], bound)
    raise InputError(f"unknown construction {kind!r}")


CONSTRUCTIONS = ("sharp", "funu", "cylinder", "path", "fixed-points", "orbit", "vplus")


# verify-suite

def suite_report(names, corpus, limits, log=None):
    """Deterministic summary of the chosen suites; returns (report, failed)."""
    suites, failed, total = {}, 0, 0
    for name in names:
        start = time.perf_counter()
        checks = run_suite(name, corpus, limits)
        elapsed = time.perf_counter() - start
        bad = [c for c in checks if not c.ok]
        failed += len(bad)
        total += len(checks)
        suites[name] = {"checks": [{"name": c.name, "status": "pass" if c.ok else "fail",
                                    "witness": plain(c.witness)} for c in checks],
                        "passed": len(checks) - len(bad), "failed": len(bad)}
        if log is not None:
            log(name, len(checks), len(bad), elapsed, bad)
    report = {"limits": limits._asdict(), "suites": suites, "total": total, "failed": failed}
    return report, failed


def _table_row(name, count, failed, elapsed, bad):
    mark = "ok" if not failed else "FAIL"
    click.echo(f"{name:<18} {count:>5} checks {failed:>4} failed {elapsed:7.2f}s  {mark}",
               err=True)
    for c in bad:
        click.echo(f"    {c.name}: {json.dumps(plain(c.witness), ensure_ascii=False)}", err=True)


# commands

def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.version_option(package_name="starcats")
def main():
    """Finite (marked) *-categories: checks, constructions and verification suites."""


@main.command("check")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the report here.")
def check_cmd(file, output):
    """Validate FILE against the invariants of its structure."""
    code, report = run_check(file)
    emit(dumps(report), output)
    sys.exit(code)


@main.command("construct")
@click.argument("kind", type=click.Choice(CONSTRUCTIONS))
@click.argument("refs", nargs=-1)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Output file.")
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
@click.option("--linearize", is_flag=True, help="Linearize finite category arguments.")
@click.option("--group", default=2, show_default=True, help="Order of the cyclic group for orbit.")
@click.option("--max-size", default=2, show_default=True, help="Carrier size bound for vplus.")
@click.option("--equivariant", is_flag=True, help="Equivariant triples for vplus.")
@click.option("--bound", default=DEFAULT_BOUND, show_default=True, help="Search bound.")
def construct_cmd(kind, refs, output, fmt, linearize, group, max_size, equivariant, bound):
    """Build KIND from the given files or corpus names and write it as JSON or DOT.

    \b
    sharp A G        A♯G (A⊗G for linear A)
    funu G A         functors G -> A into the marked groupoid, all transformations
    cylinder F       the cylinder of a functor
    path F           the path object of a functor
    fixed-points ACT cocycle category of an action
    orbit C          C♯BG for the cyclic group of order --group
    vplus X          controlled objects on a space
    """
    options = {"linearize": linearize, "group": group, "max_size": max_size,
               "equivariant": equivariant, "bound": bound}
    loader = Loader()
    try:
        S = build(kind, refs, options, loader)
    except BoundExceeded as exc:
        _fail(EXIT_BOUND, f"{exc} (raise --bound above {exc.bound})")
    except (ParseError, InputError) as exc:
        _fail(EXIT_INPUT, str(exc))
    except (CategoryError, ValueError, NotImplementedError) as exc:
        _fail(EXIT_INPUT, str(exc))
    if fmt == "dot":
        if not isinstance(S, FinCategory):
            _fail(EXIT_INPUT, "DOT export is available for finite categories only")
        emit(to_dot(S, kind.replace("-", "_")), output)
    else:
        emit(dumps(structure_json(S)), output)
    sys.exit(EXIT_OK)


@main.command("verify-suite")
@click.argument("corpus_dir", required=False, type=click.Path(file_okay=False))
@click.option("--suite", "suite_names", multiple=True, type=click.Choice(sorted(SUITES)),
              help="Suite to run (repeatable); default all.")
@click.option("--max-objects", default=4, show_default=True)
@click.option("--max-morphisms", default=16, show_default=True)
@click.option("--word-length", default=6, show_default=True)
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--quiet", is_flag=True, help="Skip the table on stderr.")
def verify_suite_cmd(corpus_dir, suite_names, max_objects, max_morphisms, word_length, bound,
                     seed, output, quiet):
    """Run verification suites over CORPUS_DIR (default: the built-in corpus)."""
    try:
        corpus = corpus_mod.read_corpus(corpus_dir) if corpus_dir else corpus_mod.default_corpus()
    except FileNotFoundError:
        _fail(EXIT_INPUT, f"corpus directory {corpus_dir} does not exist")
    except (ParseError, InputError, json.JSONDecodeError) as exc:
        _fail(EXIT_INPUT, str(exc))
    except CategoryError as exc:
        _fail(EXIT_FAIL, f"invalid corpus entry: {exc}")
    limits = Limits(max_objects, max_morphisms, word_length, bound, seed)
    names = list(suite_names) or list(SUITES)
    try:
        report, failed = suite_report(names, corpus, limits, None if quiet else _table_row)
    except BoundExceeded as exc:
        _fail(EXIT_BOUND, f"{exc} (raise --bound above {exc.bound})")
    emit(dumps(report), output)
    if not quiet:
        click.echo(f"total {report['total']} checks, {failed} failed", err=True)
    sys.exit(EXIT_FAIL if failed else EXIT_OK)


@main.command("export-corpus")
@click.argument("directory", type=click.Path(file_okay=False))
def export_corpus_cmd(directory):
    """Write the built-in corpus as JSON files under DIRECTORY."""
    corpus_mod.write_corpus(directory)
    click.echo(f"wrote corpus to {directory}", err=True)


if __name__ == "__main__":
    main()
