import json
import subprocess
import sys

import pytest

from unitary_complex.cli import main

GAMMA = 0.607714359516618


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_facets_list(capsys):
    code, out, _ = run(capsys, "facets", "30", "--list")
    assert code == 0
    assert out.split() == "12 14 16 17 18 19 20 21 22 23 24 25 26 27 28 29 30".split()


def test_facets_modes(capsys, tmp_path):
    assert run(capsys, "facets", "40", "--count")[1].strip() == "25"
    assert run(capsys, "facets", "30", "--density")[1].startswith("17/30")
    out = tmp_path / "m.csv"
    code, text, _ = run(capsys, "facets", "10", "--matrix", str(out))
    assert code == 0 and "6 x 7" in text
    assert out.read_text().splitlines()[0] == "w,2,3,4,5,7,8,9"


def test_gamma(capsys):
    code, out, _ = run(capsys, "gamma", "--tol", "1e-12")
    assert code == 0
    value = float(out.split()[0])
    assert len(out.split()[0].replace("0.", "", 1)) == 15
    assert abs(value - GAMMA) < 1e-12
    data = json.loads(run(capsys, "gamma", "--format", "json")[1])
    assert data["terms_used"] > 0 and "/" in data["exact_partial_sum"]


def test_orders_y(capsys):
    assert run(capsys, "orders", "y", "4", "--count-extensions")[1].strip() == "78"
    assert run(capsys, "orders", "y", "4", "--restrict", "2")[1].strip() == "2"
    code, out, _ = run(capsys, "orders", "y", "4", "--restrict", "2", "--export-covers", "--format", "json")
    data = json.loads(out)
    assert data["elements"] == 6 and ["12", "13"] in data["covers"]


def test_orders_check_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("35\n14\n15\n10\n21\n6\n")
    code, out, _ = run(capsys, "orders", "check", str(bad))
    assert code == 3 and out.startswith("INFEASIBLE")
    good = tmp_path / "good.txt"
    good.write_text("6 10 15 14 21 35\n")
    code, out, _ = run(capsys, "orders", "check", str(good), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["feasible"]
    w = {int(q): int(v) for q, v in data["weights"].items()}
    assert w[3] + w[5] < w[2] + w[7]


def test_orders_enumerate(capsys):
    code, out, _ = run(capsys, "orders", "enumerate", "--r", "4", "--subsets", "2", "--sorted")
    assert code == 0 and out.strip().endswith("2 realizable orders")
    assert "12 < 13 < 23 < 14 < 24 < 34" in out and "12 < 13 < 14 < 23 < 24 < 34" in out


def test_psi(capsys):
    code, out, _ = run(capsys, "psi", "5", "-1", "--piecewise", "--brute-force")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Psi(5, -1) = 6"
    assert lines[1] == "argmax level: 2"
    assert lines[2] == "K: -5 5 -5 0 -1"
    assert "brute force: 6" in out and "piecewise: 6" in out
    data = json.loads(run(capsys, "psi", "5", "0.5", "--format", "json")[1])
    assert data["c"] == "1/2" and data["argmax_level"] == 5


def test_ideal_and_sum_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "ideal", "--generators", "12", "--format", "json")
    S = tmp_path / "s.json"
    S.write_text(out)
    assert json.loads(out) == {"elements": [1, 3, 4, 12]}
    fn = tmp_path / "g.txt"
    fn.write_text("# values on the prime powers\n3 = 2\n2^2 = 5\n")
    assert run(capsys, "sum", str(S), str(fn))[1].strip() == "18"
    assert run(capsys, "sum", str(S), str(fn), "--method", "incl-excl")[1].strip() == "18"
    assert run(capsys, "sum", str(S), "const:2", "--method", "fvector")[1].strip() == "9"
    assert run(capsys, "sum", str(S), str(fn), "--method", "fvector")[0] == 1
    code, out, _ = run(capsys, "ideal", "--file", str(S), "--show", "complex")
    # facets are vertex index lists
    assert json.loads(out) == {"vertices": [3, 4], "facets": [[0, 1]]}


def test_ideal_check(capsys):
    code, out, _ = run(capsys, "ideal", "--check", "1", "6")
    assert code == 0 and "2" in out and "not closed" in out
    data = json.loads(run(capsys, "ideal", "--check", "1", "2", "--format", "json")[1])
    assert data == {"unitary_ideal": True, "witness": None}
    assert run(capsys, "ideal", "--interval", "30", "--show", "fvector")[1].split()[:3] == ["16", "12", "1"]


def test_maximize(capsys):
    code, out, _ = run(capsys, "maximize", "30", "--function", "two_omega")
    assert code == 0 and out.strip() == "max g on [1, 30] = 8 at m = 30"
    assert run(capsys, "maximize", "30", "--function", "const:1/2")[0] == 1


def test_error_exit_codes(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "facets", "30", "--nope")[0] == 1
    assert run(capsys, "orders", "y", "20")[0] == 1
    assert run(capsys, "psi", "5", "abc")[0] == 1
    code, _, err = run(capsys, "orders", "y", "5")
    assert code == 2 and "capacity" in err
    assert run(capsys, "psi", "7", "1", "--brute-force")[0] == 2


def test_json_output_is_deterministic():
    cmd = [sys.executable, "-m", "unitary_complex", "facets", "200", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["n"] == 200
