import json
import subprocess
import sys

import pytest

from egrading import cli, suite


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "E7")
    doc = json.loads(out)
    assert code == 0
    assert doc["count"] == 14 and len(doc["entries"]) == 14
    assert doc["schema_version"] == 1


def test_report_z3_4(capsys):
    code, out, _ = run(capsys, "report", "--type", "E6", "--entry", "Z3^4", "--nu", "id", "--lambda", "1,0,0,0,0,0")
    assert code == 0
    assert json.loads(out)["schur_index"] == 3


def test_report_with_module_and_nu_json(capsys, tmp_path):
    mod = tmp_path / "module.json"
    mod.write_text(json.dumps({"summands": [{"weight": [1, 0, 0, 0, 0, 0, 0], "multiplicity": 1}]}))
    nu = json.dumps({"target": "Z2^2", "matrix": [[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]]})
    code, out, _ = run(capsys, "report", "--type", "E7", "--entry", "Z2^8", "--nu", nu,
                       "--lambda", "1,0,0,0,0,0,0", "--module", str(mod))
    doc = json.loads(out)
    assert code == 0
    assert doc["schur_index"] == 2
    assert doc["module_compatibility"]["compatible"] is False


def test_report_bourbaki(capsys):
    # Bourbaki pi_7 of E7 is the 56
    code, out, _ = run(capsys, "report", "--type", "E7", "--entry", "Z2^8", "--lambda", "0,0,0,0,0,0,1", "--bourbaki")
    doc = json.loads(out)
    assert code == 0
    assert doc["weight"] == [1, 0, 0, 0, 0, 0, 0]
    assert doc["weight_bourbaki"] == [0, 0, 0, 0, 0, 0, 1]
    assert doc["weyl_dim"] == 56


def test_pauli(capsys):
    code, out, _ = run(capsys, "pauli", "--ell", "3")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["degree_map"]) == 9
    assert len(doc["bicharacter"]["exponents"]) == 9


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "catalog", "--type", "E6", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["count"] == 14


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0"], 3),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0", "--bourbaki"], 3),
        (["report", "--type", "E7", "--entry", "Z2^8", "--lambda", "1,0,0,0,0,0,0",
          "--nu", '{"target": "Z4", "matrix": [[1,1,1,1,1,1,1,1]]}'], 3),
        (["report", "--type", "E7", "--entry", "Z2^8", "--lambda", "1,0,0,0,0,0,0",
          "--nu", '{"target": "Z2", "matrix": [[1,1]]}'], 3),
        (["report", "--type", "E6", "--entry", "Z9", "--lambda", "1,0,0,0,0,0"], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0,-1,0,0,0"], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,x,0,0,0,0"], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0,0,0,0,0", "--nu", "{not json"], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0,0,0,0,0", "--nu", "[1, 2]"], 2),
        (["report", "--type", "E6", "--entry", "Z^2xZ2^3", "--lambda", "1,0,0,0,0,0"], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0,0,0,0,0", "--module", '{"oops": 1}'], 2),
        (["report", "--type", "E6", "--entry", "Z3^4", "--lambda", "1,0,0,0,0,0",
          "--module", '[[[1, 0], 1]]'], 3),
    ],
)
def test_error_exit_codes(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == expected
    assert out == "" and err.startswith("error:")


@pytest.mark.parametrize("argv", [["bogus"], ["catalog"], ["catalog", "--type", "G2"], ["pauli", "--ell", "5"], []])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_verify_reports_first_failure(capsys, monkeypatch):
    good = suite.Claim("fine", lambda ctx: (True, {}))
    bad = suite.Claim("broken claim", lambda ctx: (False, {"why": "test"}))
    monkeypatch.setitem(suite.SUITES, "e7-model", [good, bad, good])
    code, out, err = run(capsys, "verify", "e7-model")
    assert code == 1
    assert json.loads(out)["first_failure"] == "broken claim"
    assert "broken claim" in err


def test_workers_env_validation(capsys, monkeypatch):
    monkeypatch.setenv(cli.WORKERS_ENV, "many")
    code, _, err = run(capsys, "verify", "e7-model")
    assert code == 2 and cli.WORKERS_ENV in err


def test_byte_identical_output():
    argv = [sys.executable, "-m", "egrading.cli", "report", "--type", "E7", "--entry", "Z2xZ4^3",
            "--lambda", "1,0,0,0,0,0,0"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_verify_all_end_to_end(tmp_path):
    path = tmp_path / "verify.json"
    proc = subprocess.run([sys.executable, "-m", "egrading.cli", "verify", "all", "--output", str(path)],
                          capture_output=True, text=True, timeout=900)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(path.read_text())
    assert doc["passed"] and len(doc["claims"]) == 10
    assert proc.stderr.count("[PASS]") == 10
