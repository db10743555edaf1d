import json
import subprocess
import sys

import pytest

from w3calc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def test_w3_k4(capsys):
    code, report, _ = run(capsys, "w3", "--k", "4", "--parity", "even")
    assert code == 0 and report["status"] == "ok"
    assert {"exponents": [1, 3], "coeff": "1/1"} in report["outputs"]["polynomial"]
    assert "timing" not in report


def test_w3_k3_even_mod_r_is_zero(capsys):
    code, report, _ = run(capsys, "w3", "--k", "3", "--parity", "even", "--mod-r")
    assert code == 0 and report["outputs"]["residue"]["orbits"] == []


def test_bundled_ledger(capsys):
    code, report, err = run(capsys, "--human", "w3", "--k", "5", "--parity", "odd",
                            "--from-ledger", "bundled")
    assert code == 0 and report["outputs"]["matches_closed_form"] is True
    assert "W3(delta_5)" in err


def test_disagreeing_ledger_fails(capsys, tmp_path):
    path = tmp_path / "l.json"
    path.write_text(json.dumps({"k": None, "generic": [], "last": []}), encoding="utf-8")
    code, report, _ = run(capsys, "w3", "--k", "5", "--parity", "odd", "--from-ledger", str(path))
    assert code == 1 and report["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["w3", "--k", "2", "--parity", "odd"],
    ["w3", "--k", "4", "--parity", "weird"],
    ["w3", "--k", "4", "--parity", "odd", "--from-ledger", "/nonexistent.json"],
    ["independence", "--kmin", "3", "--kmax", "6", "--parity", "odd"],
    ["independence", "--kmin", "9", "--kmax", "6", "--parity", "odd"],
    ["verify", "--suite", "nope"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, report, _ = run(capsys, *argv)
    assert code == 2 and report["status"] == "fail" and "error" in report


@pytest.mark.parametrize("extra", [[], ["--topological"]])
def test_independence_full_rank(capsys, extra):
    code, report, _ = run(capsys, "independence", "--kmin", "4", "--kmax", "40", "--parity", "odd", *extra)
    cert = report["outputs"]["certificate"]
    assert code == 0 and cert["rank"] == 37 and report["outputs"]["witness_verified"]


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("W3_THREADS", "2")
    _, serial, _ = run(capsys, "independence", "--kmin", "4", "--kmax", "6", "--parity", "even")
    monkeypatch.setenv("W3_THREADS", "0")
    code, _, _ = run(capsys, "independence", "--kmin", "4", "--kmax", "6", "--parity", "even")
    assert code == 2 and serial["outputs"]["certificate"]["rank"] == 3


def test_timing_is_opt_in(capsys):
    _, report, _ = run(capsys, "--timing", "w3", "--k", "4", "--parity", "odd")
    assert report["timing"]["seconds"] >= 0


@pytest.mark.parametrize("suite", ["hexagon", "ledger", "relations"])
def test_verify_suites_pass(capsys, suite):
    code, report, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0 and all(c["passed"] for c in report["outputs"][suite])


def test_reports_are_byte_identical():
    cmd = [sys.executable, "-m", "w3calc", "verify", "--suite", "hexagon"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
