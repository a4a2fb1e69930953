import json
import subprocess
import sys

import pytest

from khoveq.cli import main
from khoveq.frobenius import universal_calculus

from calculi import broken_unit


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homology_trefoil(capsys, golden):
    code, out, _ = run(capsys, "homology", "--pd", "corpus:trefoil_right", "--bigraded")
    assert code == 0
    doc = json.loads(out)
    table = [[g["i"], g["j"], g["rank"], [int(x) for x in g["torsion"]]] for g in doc["groups"]]
    assert table == golden["bigraded"]["trefoil_right"]


def test_homology_lee_and_bar_natan(capsys):
    code, out, _ = run(capsys, "homology", "--pd", "corpus:trefoil_right", "--s", "0", "--t", "1")
    assert code == 0 and sum(g["rank"] for g in json.loads(out)["groups"]) == 2
    code, out, _ = run(capsys, "homology", "--pd", "corpus:trefoil_right", "--ring", "mod2poly", "--s", "s")
    doc = json.loads(out)
    assert code == 0
    assert [g["torsion"] for g in doc["groups"] if g["torsion"]] == [["s", "s"]]


def test_output_is_deterministic(capsys):
    args = ("verify", "invariance", "--pd", "corpus:hopf_pos", "--moves", "random:3", "--seed", "7")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 0


def test_out_flag(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "--out", str(path), "jones", "--pd", "O")
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["bracket_identity"] == "pass"


@pytest.mark.parametrize("kind,pd", [("r1", "X(1,1,2,2)"), ("r2", "corpus:r3_ready"), ("r3", "corpus:r3_ready")])
def test_verify_move(capsys, kind, pd):
    code, out, _ = run(capsys, "verify", "move", "--type", kind, "--pd", pd)
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_verify_delta_squared(capsys):
    code, out, _ = run(capsys, "verify", "delta-squared", "--pd", "corpus:figure8")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_check_calculus_exit_codes(tmp_path, capsys):
    assert run(capsys, "check-calculus")[0] == 0
    assert run(capsys, "check-calculus", "--calculus", "lee")[0] == 0
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(broken_unit().to_json()))
    code, out, _ = run(capsys, "check-calculus", "--calculus", str(path))
    assert code == 1
    assert json.loads(out)["verdict_r1"] is False


def test_errors_exit_2(capsys):
    code, out, err = run(capsys, "homology", "--pd", "X(1,2")
    assert code == 2 and out == "" and "syntax error" in json.loads(err)["error"]
    code, _, err = run(capsys, "homology", "--pd", "corpus:trefoil_right", "--t", "1", "--bigraded")
    assert code == 2
    code, _, err = run(capsys, "homology", "--pd", "corpus:nope")
    assert code == 2


def test_crossing_cap(capsys, monkeypatch):
    monkeypatch.setenv("KHOVEQ_MAX_CROSSINGS", "2")
    code, _, err = run(capsys, "homology", "--pd", "corpus:trefoil_right")
    assert code == 2 and "cap" in json.loads(err)["error"]
    code, _, _ = run(capsys, "--max-crossings", "3", "homology", "--pd", "corpus:trefoil_right")
    assert code == 0


def test_parse_lists_sites(capsys):
    code, out, _ = run(capsys, "parse", "--pd", "corpus:r3_ready")
    doc = json.loads(out)
    assert code == 0 and len(doc["sites"]["R3"]) == 2 and doc["components"] == 1


def test_console_script_via_module():
    proc = subprocess.run(
        [sys.executable, "-m", "khoveq.cli", "jones", "--pd", "O O"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["euler_characteristic_q"] == [[-2, 1], [0, 2], [2, 1]]
