import json
import subprocess
import sys

import pytest

from bsbraid import cli

KEYS = {"suite", "case", "status", "runtime_ms", "details"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_frobenius_json_report(capsys):
    code, out, _ = run(capsys, "verify", "frobenius", "--n", "3", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert reports and all(set(r) == KEYS for r in reports)
    assert all(r["status"] == "pass" and r["suite"] == "frobenius" for r in reports)
    assert [r["case"] for r in reports] == sorted(r["case"] for r in reports)


def test_stable_reruns_are_byte_identical(capsys):
    args = ("verify", "strictness", "--count", "10", "--format", "json", "--stable", "--seed", "5")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_braid_word_against_word(capsys):
    code, out, _ = run(capsys, "verify", "braid", "--word", "1 2 1", "--against", "2 1 2", "--n", "3",
                       "--format", "json")
    assert code == 0
    (r,) = json.loads(out)
    assert r["case"] == "equivalence/1 2 1~2 1 2" and r["status"] == "pass"


def test_naturality_single_generator_text(capsys):
    code, out, _ = run(capsys, "verify", "naturality", "--generator", "startdot")
    assert code == 0
    assert "homotopy found" in out and "1/1 cases passed" in out


@pytest.mark.parametrize("argv", [
    ("verify", "nonsense"),
    ("verify", "naturality", "--generator", "nope"),
    ("verify", "braid", "--word", "1"),
    ("verify", "braid", "--word", "7", "--against", "1", "--n", "3"),
    ("verify", "relations", "--n", "0"),
    (),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_failures_exit_1(capsys, monkeypatch):
    def broken(args):
        return cli.run_cases("fake", [("b", lambda: cli._require(False, "nope")), ("a", lambda: 1 / 0),
                                      ("c", lambda: "fine")])
    monkeypatch.setitem(cli.RUNNERS, "cone", broken)
    code, out, _ = run(capsys, "verify", "cone", "--format", "json")
    assert code == 1
    reports = json.loads(out)
    assert [(r["case"], r["status"]) for r in reports] == [("a", "error"), ("b", "fail"), ("c", "pass")]
    assert "ZeroDivisionError" in reports[0]["details"]


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "report.json"
    proc = subprocess.run([sys.executable, "-m", "bsbraid.cli", "verify", "cone", "--format", "json",
                           "--output", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text()) == json.loads(proc.stdout)
