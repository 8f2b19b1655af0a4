import json

import pytest
from click.testing import CliRunner

from starcats.cli import main
from starcats.corpus import default_corpus, read_corpus
from starcats.equivariant import cyclic, group_algebra_table
from starcats.fincat import find_isomorphism, indiscrete, point, to_json, validate_category
from starcats.linear import validate_linear


@pytest.fixture
def runner():
    return CliRunner()


def _write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def _run(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


# check

def test_check_valid_point(runner, tmp_path):
    res = _run(runner, "check", _write(tmp_path / "pt.json", to_json(point())))
    assert res.exit_code == 0
    report = json.loads(res.stdout)
    assert report["status"] == "pass" and report["facts"]["objects"] == 1


def test_check_non_associative_names_a_triple(runner, tmp_path):
    data = {"objects": ["*"],
            "morphisms": [{"id": x, "src": "*", "tgt": "*"} for x in "eab"],
            "identity": {"*": "e"},
            "compose": [["e", "e", "e"], ["e", "a", "a"], ["e", "b", "b"], ["a", "e", "a"],
                        ["b", "e", "b"], ["a", "a", "b"], ["a", "b", "a"], ["b", "a", "b"],
                        ["b", "b", "b"]]}
    res = _run(runner, "check", _write(tmp_path / "bad.json", data))
    assert res.exit_code == 1
    report = json.loads(res.stdout)
    assert report["error"] == "NonAssociative" and len(report["witness"]) == 3


def test_check_marked_non_unitary_names_the_morphism(runner, tmp_path):
    data = {"objects": ["*"],
            "morphisms": [{"id": "id", "src": "*", "tgt": "*"}, {"id": "p", "src": "*", "tgt": "*"}],
            "identity": {"*": "id"},
            "compose": [["id", "id", "id"], ["id", "p", "p"], ["p", "id", "p"], ["p", "p", "p"]],
            "star": {"id": "id", "p": "p"}, "marked": ["id", "p"]}
    res = _run(runner, "check", _write(tmp_path / "proj.json", data))
    assert res.exit_code == 1
    assert json.loads(res.stdout)["witness"] == "p"


def test_check_parse_error_reports_line(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"objects": ["*"],\n "morphisms": [,]}\n')
    res = _run(runner, "check", path)
    assert res.exit_code == 2
    report = json.loads(res.stdout)
    assert report["status"] == "input error" and report["line"] == 2


def test_check_missing_field(runner, tmp_path):
    res = _run(runner, "check", _write(tmp_path / "x.json", {"objects": [], "morphisms": []}))
    assert res.exit_code == 2
    assert json.loads(res.stdout)["field"] == "identity"


# construct

def test_fixed_points_of_trivial_action_on_point(runner):
    res = _run(runner, "construct", "fixed-points", "z2_trivial_pt")
    assert res.exit_code == 0
    C = validate_category(json.loads(res.stdout))
    assert find_isomorphism(C.replace(marked=None), point().replace(marked=None)) is not None


def test_linear_orbit_is_the_group_algebra(runner):
    res = _run(runner, "construct", "orbit", "pt", "--linearize", "--group", 2)
    assert res.exit_code == 0
    T = validate_linear(json.loads(res.stdout))
    assert T.dim(0, 0) == 2
    for (h, g), vec in group_algebra_table(cyclic(2)).items():
        assert T.compose(T.basis_mor(h), T.basis_mor(g)).v == vec


def test_cylinder_of_identity_on_point(runner):
    res = _run(runner, "construct", "cylinder", "id_pt")
    assert res.exit_code == 0
    C = validate_category(json.loads(res.stdout))
    assert find_isomorphism(C.underlying(), indiscrete(2).underlying()) is not None


@pytest.mark.parametrize("args", [
    ("sharp", "unitary", "bz2"), ("funu", "bz2", "marked_unitary"), ("path", "pt_to_bz2"),
    ("cylinder", "disc2_to_pt"), ("orbit", "disc2", "--group", "3"), ("vplus", "point"),
    ("vplus", "z2", "--equivariant", "--max-size", "1"), ("sharp", "pt", "bz2", "--linearize"),
])
def test_constructions_re_validate(runner, tmp_path, args):
    out = tmp_path / "out.json"
    res = _run(runner, "construct", *args, "-o", out)
    assert res.exit_code == 0, res.output
    again = _run(runner, "check", out)
    assert again.exit_code == 0, again.stdout
    assert json.loads(again.stdout)["status"] == "pass"


def test_construct_is_deterministic(runner):
    first = _run(runner, "construct", "funu", "bz2", "unitary").stdout
    assert first == _run(runner, "construct", "funu", "bz2", "unitary").stdout


def test_construct_dot(runner):
    res = _run(runner, "construct", "sharp", "pt", "bz2", "--format", "dot")
    assert res.exit_code == 0 and res.stdout.startswith("digraph")


def test_construct_wrong_arity_is_input_error(runner):
    assert _run(runner, "construct", "sharp", "pt").exit_code == 2


def test_construct_unknown_reference_is_input_error(runner):
    assert _run(runner, "construct", "orbit", "no_such_thing").exit_code == 2


def test_construct_bound(runner):
    assert _run(runner, "construct", "funu", "bz2", "ind3", "--bound", 2).exit_code == 3


# verify-suite

def test_model_suite_passes(runner):
    res = _run(runner, "verify-suite", "--suite", "model", "--quiet")
    assert res.exit_code == 0
    report = json.loads(res.stdout)
    assert report["failed"] == 0 and report["suites"]["model"]["passed"] > 0


def test_exponential_law_counts_are_reported(runner):
    res = _run(runner, "verify-suite", "--suite", "exponential-law", "--quiet")
    assert res.exit_code == 0
    checks = json.loads(res.stdout)["suites"]["exponential-law"]["checks"]
    assert checks and all(c["status"] == "pass" for c in checks)
    # each check logs the number of functors matched on both sides
    assert all(isinstance(c["witness"], int) for c in checks)


def test_table_goes_to_stderr(runner):
    res = _run(runner, "verify-suite", "--suite", "model")
    assert "model" in res.stderr and "total" in res.stderr
    assert "checks, " not in res.stdout
    json.loads(res.stdout)


def test_empty_corpus_has_no_checks(runner, tmp_path):
    for sub in ("categories", "functors", "actions", "spaces"):
        (tmp_path / sub).mkdir()
    res = _run(runner, "verify-suite", tmp_path, "--quiet")
    assert res.exit_code == 0
    assert json.loads(res.stdout)["total"] == 0


def test_missing_corpus_dir_is_input_error(runner, tmp_path):
    assert _run(runner, "verify-suite", tmp_path / "nope").exit_code == 2


def test_reports_are_byte_identical(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    _run(runner, "verify-suite", "--suite", "representability", "-o", a, "--quiet")
    _run(runner, "verify-suite", "--suite", "representability", "-o", b, "--quiet")
    assert a.read_bytes() == b.read_bytes()


def test_bound_exceeded_exit_code(runner):
    assert _run(runner, "verify-suite", "--suite", "exponential-law", "--bound", 3,
                "--quiet").exit_code == 3


# export-corpus

def test_export_round_trip(runner, tmp_path):
    res = _run(runner, "export-corpus", tmp_path)
    assert res.exit_code == 0
    back, orig = read_corpus(tmp_path), default_corpus()
    assert sorted(back.categories) == sorted(orig.categories)
    assert sorted(back.functors) == sorted(orig.functors)
    assert sorted(back.actions) == sorted(orig.actions)
    for name, C in orig.categories.items():
        assert back.categories[name].n_mor == C.n_mor
    for path in sorted((tmp_path / "categories").iterdir())[:5]:
        assert _run(runner, "check", path).exit_code == 0
