import io
import json
import os
import subprocess
import sys

import pytest

from semidelta import cli, suites
from semidelta.groups import cyclic, symmetric


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out) if out else None, err


def subprocess_run(*argv, hashseed="0"):
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    return subprocess.run([sys.executable, "-m", "semidelta", *argv], capture_output=True,
                          text=True, env=env)


@pytest.mark.parametrize(
    "argv, value, valuation, invertible",
    [
        (["card", "--prime", "2", "--ring", "en", "--height", "2", "B1"], "2", 1, False),
        (["card", "--prime", "3", "--ring", "q", "B2"], "3", 1, True),
        (["card", "--prime", "2", "--ring", "en", "--height", "2", "W(B1)"], "5", 0, True),
        (["dim", "--prime", "2", "--height", "2", "B1"], "4", 2, False),
        (["dim", "--prime", "5", "--height", "0", "B3"], "1", 0, True),
        (["dim", "--prime", "2", "--height", "3", "pt"], "1", 0, True),
    ],
)
def test_value_commands(argv, value, valuation, invertible):
    code, data, _ = run_json(*argv)
    assert code == 0
    assert (data["value"], data["valuation"], data["invertible"]) == (value, valuation, invertible)
    assert data["rule"]


def test_human_output():
    code, out, _ = run("card", "--prime", "2", "--height", "2", "B1")
    assert code == 0
    assert "value: 2" in out and "valuation: 1" in out and "invertible: no" in out


def test_truncated_and_rational_formats():
    _, data, _ = run_json("card", "-p", "2", "--height", "2", "--mode", "truncated",
                          "--precision", "6", "W(B1) + B1")
    assert data["value"] == "7 mod 2^5"
    _, data, _ = run_json("card", "-p", "2", "W(B1)")
    assert data["value"] == "1/8" and data["valuation"] == -3


def test_delta_command():
    code, data, _ = run_json("delta", "-p", "2", "--height", "2", "B1")
    assert code == 0 and data["delta"] == "-W(B1) + B1^2" and data["delta_value"] == "-1"


def test_bootstrap_text_trace():
    code, out, _ = run("bootstrap", "--prime", "2", "--height", "3", "--target", "1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert [line.split("= ")[2].split(",")[0] for line in lines[:3]] == ["4", "22", "319"]
    assert lines[3].startswith("amenable-witness W(W(B1))")


def test_bootstrap_json():
    code, data, _ = run_json("bootstrap", "--prime", "3", "--height", "2", "--target", "2")
    assert code == 0
    assert data == {"prime": 3, "height": 2, "target": 2, "mode": "exact", "steps": [],
                    "verdict": {"kind": "already-invertible"}, "predicted_length": 0,
                    "observed_length": 0}
    _, data, _ = run_json("bootstrap", "--prime", "2", "--height", "1", "--target", "1")
    assert data["verdict"]["kind"] == "already-invertible"


def test_check_span_suite():
    code, data, _ = run_json("check", "--suite", "span", "--seed", "7")
    assert code == 0 and data["ok"] and data["seed"] == 7
    names = {law["law"] for law in data["laws"]}
    assert {"functoriality", "fubini", "additivity", "distributivity"} <= names
    assert all(law["instances"] > 0 for law in data["laws"])


def test_check_groupoid_suite():
    code, data, _ = run_json("check", "--suite", "groupoid", "--prime", "2")
    assert code == 0
    (law,) = data["laws"]
    assert law["law"] == "wreath-delta-identity" and law["instances"] == 20


def test_check_delta_suite_lists_laws():
    code, data, _ = run_json("check", "--suite", "delta", "--prime", "3")
    assert code == 0
    names = [law["law"] for law in data["laws"]]
    assert "additivity[free rig]" in names and "no-derivation-on-torsion[Z/9]" in names
    assert any(n.startswith("evaluate-commutes-with-delta") for n in names)


def test_groupoid_command(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(symmetric(3)))
    code, data, _ = run_json("groupoid", str(path), "--construct", "free-loop")
    assert code == 0
    assert data["components"] == 3 and sorted(data["automorphism_orders"]) == [2, 3, 6]
    assert data["cardinality"] == "1"
    code, data, _ = run_json("groupoid", json.dumps(cyclic(2)), "--export")
    assert data["wreath_check"]["ok"] and data["groupoid"]["identities"] == [0]


def test_sweep_command():
    code, data, _ = run_json("sweep", "--primes", "2,3", "--n-max", "4", "--m-max", "3")
    assert code == 0 and data["ok"] and len(data["cells"]) == 24


# exit codes -------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["card", "--prime", "2", "B1 +"],
        ["card", "--prime", "4", "pt"],
        ["card", "--ring", "en", "B1"],
        ["dim", "L(pt + pt)"],
        ["card", "-p", "2", "--height", "0", "--mode", "truncated", "B1"],
        ["bootstrap", "--target", "1"],
        ["groupoid", "[[0, 1], [1, 1]]"],
        ["groupoid", "not json"],
        ["frobnicate"],
        ["card", "Om(B1 + B1)"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_parse_error_reports_position():
    _, _, err = run("card", "B1 $ B2")
    assert "position 3" in err


def test_guards_exit_3():
    code, _, err = run("groupoid", json.dumps(cyclic(9)), "--construct", "wreath", "-p", "7")
    assert code == 3 and err.startswith("guard:")
    code, _, _ = run("bootstrap", "-p", "2", "--height", "3", "--target", "1",
                     "--mode", "truncated", "--precision", "2")
    assert code == 3


def test_check_failures_exit_1(monkeypatch):
    def broken(name, p, seed=0, precision=64):
        return [{"law": "functoriality", "instances": 1,
                 "failures": [{"seed": seed, "description": "injected"}]}]

    monkeypatch.setattr(suites, "run_suite", broken)
    code, out, _ = run("check", "--suite", "span")
    assert code == 1 and "1 failures" in out and "injected" in out


def test_sweep_failures_exit_1(monkeypatch):
    from semidelta import bootstrap

    monkeypatch.setattr(bootstrap, "predict_length", lambda n, m: 99)
    code, data, _ = run_json("sweep", "--primes", "2", "--n-max", "2", "--m-max", "1")
    assert code == 1 and not data["ok"]


# determinism ------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--suite", "span", "--seed", "11", "--json"],
        ["card", "-p", "3", "--height", "2", "W(B1 + B2) * B1", "--json"],
        ["bootstrap", "-p", "2", "--height", "4", "--target", "2", "--json"],
    ],
)
def test_json_is_byte_identical_across_processes(argv):
    a = subprocess_run(*argv, hashseed="1")
    b = subprocess_run(*argv, hashseed="2")
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    json.loads(a.stdout)


def test_module_entry_point_exit_code():
    assert subprocess_run("card", "B1 +").returncode == 2
