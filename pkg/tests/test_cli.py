import json
import os
import subprocess
import sys

import pytest

from k3div.cli import dumps, main

GENERIC = ["qe", "analyze", "--phi", "1", "--a", "0", "--psi", "t^5+t^2+1"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_lattice_info(capsys):
    code, out, err = run(["lattice", "info", "--spec", "U(2)+~A1^20"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["rank"] == 22 and doc["length"] == 20 and doc["type_I"] and doc["milgram"]
    assert doc["signature"] == [1, 21]
    assert "rank 22" in err


def test_divisible_check(capsys):
    # basis of ~A1^8 is (delta, e2, ..., e8) with 2 delta = e1 + ... + e8
    code, out, _ = run(["lattice", "info", "--spec", "~A1^8"], capsys)
    assert json.loads(out)["basis"][0] == ["1/2"] * 8
    code, out, _ = run(["divisible", "check", "--spec", "~A1^8", "--class", "2,0,0,0,0,0,0,0"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["divisible"] and doc["self_intersection"] == -16
    code, out, _ = run(["divisible", "check", "--spec", "~A1^8", "--class", "1,0,0,0,0,0,0,0"], capsys)
    doc = json.loads(out)
    assert code == 0 and not doc["divisible"] and doc["self_intersection"] == -4


def test_qe_analyze(capsys):
    code, out, err = run(GENERIC + ["--field", "gf2"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["sigma"] == 9 and doc["n_III"] == 20
    assert doc["height_ledger"]["identity"] == "0 = 4 + 6 - 20*1/2"
    assert doc["height_ledger"]["total"] == "0"
    assert "sigma=9" in err


def test_qe_not_k3_exits_1(capsys):
    code, out, err = run(["qe", "analyze", "--phi", "0", "--a", "0", "--psi", "t"], capsys)
    assert code == 1 and json.loads(out)["k3"] is False
    assert "not a K3" in err


def test_sing_classify(capsys):
    code, out, _ = run(["sing", "classify", "--f", "t^3 + s^5"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["type"] == "E8^0" and doc["colength"] == 8


def test_catalog_cell(capsys):
    code, out, err = run(["catalog", "verify", "--cell", "20,1"], capsys)
    assert code == 0
    assert json.loads(out)["cell"]["status"] == "impossible (external)"


@pytest.mark.parametrize(
    "argv",
    [
        ["lattice", "info", "--spec", "U+Q7"],
        ["divisible", "check", "--spec", "A2", "--class", "1"],
        ["divisible", "check", "--spec", "A2", "--class", "a,b"],
        ["qe", "analyze", "--phi", "t^^", "--a", "0", "--psi", "1"],
        ["qe", "analyze", "--field", "gf3", "--phi", "1", "--a", "0", "--psi", "1"],
        ["catalog", "verify", "--cell", "10,3"],
        ["catalog", "verify", "--cell", "x"],
        ["nosuch"],
    ],
)
def test_bad_input_exits_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == ""
    assert err


def test_output_file_and_quiet(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, err = run(["-q", "lattice", "info", "--spec", "D4", "--output", str(path)], capsys)
    assert code == 0 and out == "" and err == ""
    assert json.loads(path.read_text())["det"] == 4


def test_json_is_exact():
    from fractions import Fraction

    assert dumps({"b": Fraction(1, 2), "a": (1, 2)}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": "1/2"\n}'
    with pytest.raises(TypeError):
        dumps({"x": 0.5})


def _cli(args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "k3div", *args], capture_output=True, env=e, check=False)


def test_byte_identical_runs():
    a = _cli(GENERIC)
    b = _cli(GENERIC)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_backends_give_identical_output():
    a = _cli(GENERIC, {"K3DIV_NO_NUMBA": "1"})
    b = _cli(GENERIC, {"K3DIV_NO_NUMBA": ""})
    assert a.stdout == b.stdout


def test_field_from_environment():
    # over GF(4) the same input is analyzed in the larger field
    r = _cli(GENERIC, {"K3DIV_FIELD": "gf(2^2)"})
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["n_III"] == 20
    assert doc["weierstrass"] != json.loads(_cli(GENERIC).stdout)["weierstrass"]
