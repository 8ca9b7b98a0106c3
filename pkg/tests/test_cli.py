import json
import subprocess
import sys

import pytest

from hellyfix import cli, suites
from hellyfix.report import SCHEMA, Case, VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots_build_json(capsys):
    code, out, _ = run(capsys, "roots", "build", "A", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert len(doc["cases"][0]["detail"]["roots"]) == 6


def test_roots_coxeter_summary(capsys):
    code, out, _ = run(capsys, "roots", "coxeter", "triangle-237.json")
    assert code == 0 and "hyperbolic; all proper parabolics finite" in out


def test_infinite_label_is_expected_infeasible(capsys):
    code, out, _ = run(capsys, "roots", "coxeter", "triangle-23inf.json", "--json")
    assert code == 0
    assert json.loads(out)["cases"][0]["status"] == "infeasible-as-expected"


def test_roots2_single_family(capsys):
    code, out, _ = run(capsys, "roots", "roots2", "--family", "B", "--rank", "3", "--variant", "both", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and len(doc["cases"]) == 2


def test_chevalley_examples(capsys):
    code, out, _ = run(capsys, "chevalley", "commutator", "--n", "3", "--samples", "5", "--json")
    assert code == 0 and json.loads(out)["counts"]["fail"] == 0
    code, out, _ = run(capsys, "chevalley", "nilpotency", "--n", "3", "--subset", "simple", "--ring", "Z/4,trunc 3")
    assert code == 0 and "class 2" in out
    code, out, _ = run(capsys, "chevalley", "nilpotency", "--n", "3", "--subset", "full", "--ring", "Z/2")
    assert code == 0 and "infeasible-as-expected" in out and "non-nilpotent within bound" in out


def test_helly_examples(capsys):
    code, out, _ = run(capsys, "helly", "verify", "--model", "tree", "--random", "50", "--seed", "7")
    assert code == 0 and "50/50 pass" in out
    code, out, _ = run(capsys, "helly", "leray", "fixtures/hollow-triangle-edges.json")
    assert code == 0 and "profiles equal" in out and "[0, 1]" in out
    code, out, _ = run(capsys, "helly", "leray", "non-good-cover.json")
    assert code == 0 and "inapplicable" in out.lower()
    code, out, _ = run(capsys, "helly", "nerve", "circle-arcs.json", "--json")
    assert code == 0


def test_tree_examples(capsys):
    code, out, _ = run(capsys, "tree", "common", "fixtures/tripod-rotations.json")
    assert code == 0 and "common fixed point c" in out
    code, out, _ = run(capsys, "tree", "common", "integer-line-reflections.json")
    assert code == 0 and "infeasible-as-expected" in out
    code, out, _ = run(capsys, "tree", "classify", "integer-line-translations.json")
    assert code == 0 and "hyperbolic" in out
    code, out, _ = run(capsys, "tree", "fix", "edge-inversion.json", "--json")
    assert code == 0


# ---------------------------------------------------------------- exit codes


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "roots", "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "roots", "build", "Q", "3")[0] == 2
    assert run(capsys, "roots", "roots2")[0] == 2
    assert run(capsys, "helly", "verify", "--random", "5")[0] == 2


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "tree", "classify", "no-such-file.json")
    assert code == 2 and "no-such-file.json" in err


def test_malformed_json_exit_2_with_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "matrix": [[1, 3],\n  [3, 1]\n')
    code, _, err = run(capsys, "roots", "coxeter", str(bad))
    assert code == 2
    assert f"{bad}:" in err and ":4:" in err


def test_invalid_content_exit_2(tmp_path, capsys):
    bad = tmp_path / "cyc.json"
    bad.write_text(json.dumps({"tree": {"edges": [["a", "b"], ["b", "c"], ["c", "a"]]}, "generators": {}}))
    assert run(capsys, "tree", "classify", str(bad))[0] == 2


def test_failure_exit_1(monkeypatch, capsys):
    def failing(*_):
        rep = VerificationReport("tree classify", {})
        rep.add(Case("x", "fail", "planted failure", {"witness": 1}))
        return rep

    monkeypatch.setattr(suites, "tree_classify", failing)
    code, out, _ = run(capsys, "tree", "classify", "anything.json")
    assert code == 1 and "planted failure" in out

    def broken(*_):
        raise ArithmeticError("planted")

    monkeypatch.setattr(suites, "tree_classify", broken)
    code, _, err = run(capsys, "tree", "classify", "anything.json")
    assert code == 1 and "planted" in err


def test_inconclusive_does_not_fail():
    rep = VerificationReport("x", {})
    rep.add(Case("a", "inconclusive", "ball too small", {}))
    assert rep.exit_code == 0
    with pytest.raises(ValueError):
        Case("a", "maybe", "", {})


# --------------------------------------------------------------- determinism


def test_reports_are_byte_identical(capsys):
    outs = {run(capsys, "helly", "verify", "--model", "box", "--random", "30", "--seed", "3", "--json")[1]
            for _ in range(2)}
    assert len(outs) == 1
    other = run(capsys, "helly", "verify", "--model", "box", "--random", "30", "--seed", "4", "--json")[1]
    assert other not in outs


def test_parallel_reports_match_serial(monkeypatch, capsys):
    argv = ["roots", "property3", "--all", "--max-rank", "4", "--json"]
    serial = run(capsys, *argv)[1]
    monkeypatch.setenv("HELLYFIX_JOBS", "2")
    parallel = run(capsys, *argv)[1]
    assert serial == parallel
    argv = ["helly", "verify", "--model", "tree", "--random", "40", "--seed", "1", "--json"]
    parallel = run(capsys, *argv)[1]
    monkeypatch.setenv("HELLYFIX_JOBS", "1")
    assert run(capsys, *argv)[1] == parallel


def test_bad_jobs_value(monkeypatch, capsys):
    monkeypatch.setenv("HELLYFIX_JOBS", "many")
    assert run(capsys, "roots", "property3", "--family", "A", "--rank", "2")[0] == 2


def test_timing_only_on_request(capsys):
    doc = json.loads(run(capsys, "roots", "build", "G", "2", "--json")[1])
    assert "timing" not in doc or not doc["timing"]
    doc = json.loads(run(capsys, "roots", "build", "G", "2", "--json", "--timing")[1])
    assert doc["timing"]["total"] >= 0


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "hellyfix.cli", "roots", "build", "A", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "pass" in res.stdout
