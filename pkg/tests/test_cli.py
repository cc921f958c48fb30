import json
import subprocess
import sys

import pytest

from lie2local.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_analyze_sl2(capsys):
    code, doc, _ = run(capsys, "analyze", "--builder", "sl:2")
    assert code == 0
    assert doc["schema_version"] == "1"
    assert {k: doc[k] for k in ("dim", "semisimple", "nilpotent", "center_dim")} == {
        "dim": 3,
        "semisimple": True,
        "nilpotent": False,
        "center_dim": 0,
    }


def test_killing_output(capsys):
    code, doc, _ = run(capsys, "killing", "--builder", "sl:2")
    assert code == 0
    assert doc["gram"] == [["8", "0", "0"], ["0", "0", "4"], ["0", "4", "0"]]
    assert doc["semisimple"] is True and doc["radical_dim"] == 0
    _, doc, _ = run(capsys, "killing", "--builder", "heisenberg:1")
    assert doc["radical_dim"] == 3


def test_roots_sl2(capsys):
    code, doc, _ = run(capsys, "roots", "--builder", "sl:2")
    assert code == 0
    assert len(doc["roots"]) == 2
    assert doc["d"] == ["1", "0", "0"] and doc["q"] == ["0", "1", "1"]


def test_roots_without_cartan_is_input_error(capsys):
    code, doc, err = run(capsys, "roots", "--builder", "heisenberg:1")
    assert code == 2 and doc is None
    assert err.startswith("error:") and err.count("\n") == 1


def test_derivations(capsys):
    code, doc, _ = run(capsys, "derivations", "--builder", "heisenberg:1", "--basis")
    assert code == 0 and doc["dim"] == 6 and len(doc["basis"]) == 6


def test_exp(tmp_path, capsys):
    m = tmp_path / "d.json"
    m.write_text(json.dumps([["0", "0", "1"], ["-2", "0", "0"], ["0", "0", "0"]]))  # ad e on sl(2)
    code, doc, _ = run(capsys, "exp", "--builder", "sl:2", "--map", str(m))
    assert code == 0
    assert doc["matrix"] == [["1", "0", "1"], ["-2", "1", "-1"], ["0", "0", "1"]]
    m.write_text(json.dumps([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    code, _, err = run(capsys, "exp", "--builder", "sl:2", "--map", str(m))
    assert code == 1 and "not a derivation" in err
    m.write_text(json.dumps([["1", "0"], ["0", "1"]]))
    assert run(capsys, "exp", "--builder", "sl:2", "--map", str(m))[0] == 2


def test_counterexample_and_certify(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = main(["counterexample", "--builder", "heisenberg:1", "--pairs", "100", "--seed", "7", "--output", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["pairs"]) == 100 and all(p["verified"] for p in doc["pairs"])
    assert doc["nonadditivity"]["defect"] == ["0", "0", "-1/2"]
    assert doc["verdict"] == "both"
    assert doc["setup"]["z"] == ["0", "0", "1"]

    code, res, _ = run(capsys, "certify", str(out))
    assert code == 0 and res["valid"] and res["pairs_checked"] == 100

    doc["pairs"][3]["a"] = "17"
    out.write_text(json.dumps(doc))
    code, res, err = run(capsys, "certify", str(out))
    assert code == 1 and not res["valid"] and "pair 3" in res["problems"][0]


def test_certify_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"algebra": {"dim": 1}}))
    assert run(capsys, "certify", str(bad))[0] == 2
    assert run(capsys, "certify", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze"],
        ["analyze", "--builder", "sl:2", "--file", "x.json"],
        ["analyze", "--builder", "nope:2"],
        ["analyze", "--builder", "sl:1"],
        ["counterexample", "--builder", "heisenberg:1", "--pairs", "0"],
        ["counterexample", "--builder", "sl:2"],
    ],
)
def test_input_errors(argv, capsys):
    assert main(argv) == 2


def test_build_round_trip(tmp_path, capsys):
    for spec in ("sl:3", "heisenberg:2", "filiform:5", "abelian:4"):
        code, built, _ = run(capsys, "build", "--builder", spec)
        path = tmp_path / "alg.json"
        path.write_text(json.dumps(built))
        _, a1, _ = run(capsys, "analyze", "--builder", spec)
        _, a2, _ = run(capsys, "analyze", "--file", str(path))
        assert a1 == a2


def test_jacobi_failure_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 3, "labels": ["a", "b", "c"], "brackets": [[0, 1, 1, "1"], [1, 2, 0, "1"]]}))
    code, _, err = run(capsys, "analyze", "--file", str(path))
    assert code == 2 and "(0, 1, 2)" in err


def test_subprocess_determinism():
    argv = [sys.executable, "-m", "lie2local", "counterexample", "--builder", "filiform:4", "--pairs", "50", "--seed", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_algebra_option_accepts_builder_or_file(tmp_path, capsys):
    _, by_builder, _ = run(capsys, "analyze", "--algebra", "heisenberg:2")
    _, built, _ = run(capsys, "build", "--builder", "heisenberg:2")
    path = tmp_path / "h2.json"
    path.write_text(json.dumps(built))
    _, by_file, _ = run(capsys, "analyze", "--algebra", str(path))
    assert by_builder == by_file
    assert run(capsys, "analyze", "--algebra", str(tmp_path / "missing.json"))[0] == 2
