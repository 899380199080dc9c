import json
import subprocess
import sys
from fractions import Fraction

import pytest

import oracles
from qreals.cli import main, parse_shift_range
from reference_values import GOLDEN, SILVER_WALL


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_golden_bfile(capsys):
    code, out, _ = run(capsys, "expand", "metallic:1", "--order", "21", "--format", "bfile")
    assert code == 0
    assert out.splitlines()[:4] == ["0 1", "1 0", "2 1", "3 -1"]
    assert [int(line.split()[1]) for line in out.splitlines()] == GOLDEN


def test_expand_three_fifths(capsys):
    code, out, _ = run(capsys, "expand", "3/5", "--order", "10", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    coeffs = [Fraction(c) for c in obj["coefficients"]]
    head = [0] * obj["valuation"] + coeffs
    assert head[:10] == oracles.q_three_fifths(10)


def test_expand_zero(capsys):
    code, out, _ = run(capsys, "expand", "0/1")
    assert code == 0 and out.strip() == "O(q^40)"


def test_cfrac_golden_super3(capsys):
    code, out, _ = run(capsys, "cfrac", "metallic:1", "--delta", "3")
    assert code == 0
    assert "(1 + q - q^2 + q^3 / (1 + q - q^2" in out
    assert "layer period: 1" in out


def test_cfrac_silver_h_fraction(capsys):
    code, out, _ = run(capsys, "cfrac", "metallic:2", "--delta", "2", "--shift", "1",
                       "--order", "120")
    assert code == 0
    assert "layer period: 8" in out
    assert "k: 0, 1, 2, 1, 0, 0, 0, 0, 0, 1, 2, 1" in out


def test_cfrac_catalan(capsys):
    code, out, _ = run(capsys, "cfrac", "catalan", "--format", "json")
    assert code == 0
    layers = json.loads(out)["fraction"]["layers"]
    assert all(L["coeff"] == "-1" and L["exp"] == 1 for L in layers)


def test_cfrac_rational_no_false_period(capsys):
    code, out, _ = run(capsys, "cfrac", "2/5")
    assert code == 0 and "layer period: none detected" in out


def test_wall_silver_table(capsys):
    code, out, _ = run(capsys, "wall", "metallic:2", "--shifts", "0..3", "--n", "11",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()[1:]
    assert [[int(x) for x in line.split(",")[1:]] for line in lines] == \
        [SILVER_WALL[ell] for ell in range(4)]


def test_wall_order_raised_with_notice(capsys):
    code, _, err = run(capsys, "wall", "metallic:1", "--shifts", "0..3", "--n", "10",
                       "--order", "5")
    assert code == 0 and "order raised" in err


def test_wall_from_file(tmp_path, capsys):
    path = tmp_path / "golden.b"
    path.write_text("".join(f"{i} {c}\n" for i, c in enumerate(GOLDEN)))
    code, out, _ = run(capsys, "wall", "--file", str(path), "--shifts", "0..0", "--n", "7",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["values"] == ["1", "1", "1", "0", "-1", "-1", "-1", "0"]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--conjecture", "1", "--n", "60")[0] == 0
    code, out, _ = run(capsys, "verify", "--conjecture", "2", "--n", "3")
    assert code == 0 and "insufficient range" in out
    assert run(capsys, "verify", "--conjecture", "4", "--n", "60", "--budget-seconds", "0")[0] == 3


def test_usage_errors(capsys):
    code, _, err = run(capsys, "expand", "3/")
    assert code == 2 and "position 2" in err
    assert run(capsys, "wall", "metallic:1", "--shifts", "3..1")[0] == 2
    assert run(capsys, "cfrac", "metallic:1", "--format", "bfile")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_shift_range_parser():
    assert parse_shift_range("0..3") == (0, 3)
    assert parse_shift_range("2") == (2, 2)


def test_deterministic_output():
    cmd = [sys.executable, "-m", "qreals", "wall", "metallic:3", "--shifts", "0..4",
           "--n", "20", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
