import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from covalg import __version__
from covalg.cli import main

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_extension_report(capsys):
    path = DATA / "simplexample.json"
    code, rep, _ = run_json(capsys, "extension", path)
    assert code == 0
    assert rep["n_points"] == 6 and rep["cardinality"] == "Finite(6)"
    assert rep["tool"] == "pds" and rep["version"] == __version__
    assert rep["input_sha256"] == hashlib.sha256(path.read_bytes()).hexdigest()
    # the shift moves along two 3-chains: four edges in all
    assert len(rep["tilde_alpha_edges"]) == 4


def test_both_two_diagram_systems_give_the_same_shape(capsys):
    _, a, _ = run_json(capsys, "extension", DATA / "simplexample.json")
    _, b, _ = run_json(capsys, "extension", DATA / "simplexample_prime.json")
    assert a["n_points"] == b["n_points"] == 6
    assert sorted(map(tuple, a["tilde_alpha_edges"])) == sorted(map(tuple, b["tilde_alpha_edges"]))


def test_loop_extension_truncates(capsys):
    code, rep, _ = run_json(capsys, "extension", DATA / "loop.json", "--max-len", "4")
    assert code == 0
    assert rep["cardinality"] == "CountablyInfinite" and not rep["complete"]
    kinds = [p["kind"] for p in rep["points"]]
    assert kinds.count("EventuallyPeriodic") == 1


def test_freedom_exit_codes(capsys):
    code, rep, _ = run_json(capsys, "freedom", DATA / "cycle3.json")
    assert code == 0 and rep["free"] is False
    code, rep, _ = run_json(capsys, "freedom", DATA / "cycle3.json", "--assert-free")
    assert code == 2 and rep["free"] is False
    code, rep, _ = run_json(capsys, "freedom", DATA / "cycle3_entry.json", "--assert-free")
    assert code == 0 and rep["free"] is True


def test_markov_commands(capsys):
    code, rep, _ = run_json(capsys, "markov", "augment", DATA / "A_10_10.txt")
    assert code == 0 and rep["matrix"] == [[1, 0, 1], [0, 1, 0], [0, 1, 0]]
    code, rep, _ = run_json(capsys, "markov", "embed-check", DATA / "A_10_10.txt")
    assert code == 0 and rep["passed"] and set(rep["lengths"]) == {str(L) for L in range(2, 7)}
    code, rep, _ = run_json(capsys, "markov", "freedom", DATA / "A_10_10.txt", "--assert-free")
    assert code == 0 and rep["free"]
    code, _, err = run(capsys, "markov", "augment", DATA / "bad_zero_row.txt")
    assert code == 1 and err.startswith("error:")


def test_invariants_and_structure(capsys):
    code, rep, _ = run_json(capsys, "invariants", DATA / "simplexample.json")
    assert code == 0 and len(rep["sets"]) == 4 and not rep["intersection_closed"]
    assert len(rep["pairing"]) == 4
    code, rep, _ = run_json(capsys, "decompose", DATA / "m2_m3.json")
    assert code == 0 and rep["chains"] == [2, 3] and rep["generated_dim"] == 13
    code, rep, _ = run_json(capsys, "ideals", DATA / "simplexample.json")
    assert code == 0 and len(rep["ideals"]) == 4
    code, _, err = run(capsys, "decompose", DATA / "cycle3.json")
    assert code == 1 and err.startswith("error:")


def test_simplicity(capsys):
    code, rep, _ = run_json(capsys, "simplicity", DATA / "cycle3.json", "--assert-simple")
    assert code == 2 and rep["reason"] == "Cycle"
    code, rep, _ = run_json(capsys, "simplicity", DATA / "simplexample.json")
    assert code == 0 and rep["reason"] == "NotMinimal" and rep["witness"]


def test_randomized_commands_are_deterministic(capsys):
    for cmd in (["star-check", DATA / "simplexample.json", "--samples", "20"],
                ["coeff-selftest", DATA / "loop.json", "--samples", "10", "--seed", "3"]):
        c1, o1, _ = run(capsys, *cmd)
        c2, o2, _ = run(capsys, *cmd)
        assert c1 == c2 == 0 and o1 == o2
        assert json.loads(o1)["passed"]


def test_dot_output(capsys):
    code, out, _ = run(capsys, "dot", DATA / "simplexample.json")
    assert code == 0 and out.startswith("digraph")
    code, out2, _ = run(capsys, "extension", DATA / "simplexample.json", "--format", "dot")
    assert out2 == out


@pytest.mark.parametrize(
    "argv",
    [
        ["extension", "missing.json"],
        ["extension", str(DATA / "simplexample.json"), "--bogus"],
        ["extension", str(DATA / "simplexample.json"), "--max-len", "0"],
        ["markov", "embed-check", str(DATA / "A_10_10.txt"), "--max-len", "1"],
        ["nosuchcommand"],
        [],
    ],
)
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")


def test_invalid_system_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": ["a"], "alpha": {"a": "b"}}))
    code, _, err = run(capsys, "validate", bad)
    assert code == 1 and "error:" in err
    bad.write_text("{not json")
    assert run(capsys, "validate", bad)[0] == 1


def test_cap_exceeded(capsys, tmp_path):
    pts = [f"p{i}" for i in range(22)]
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"points": pts, "alpha": {}}))
    code, _, err = run(capsys, "invariants", big)
    assert code == 3 and err.startswith("error:")


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "covalg", "validate", str(DATA / "alfainvar.json")],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["delta_1"] == ["x1", "x2", "y2", "y3"]
