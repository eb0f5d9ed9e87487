import json

import pytest

from mtv.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_singular_lambda(capsys):
    code, out, _ = run_cli(capsys, "singular-lambda", "--N", "7")
    assert code == 0 and out.strip() == "242/91"


def test_matrix_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "matrix", "--kind", "S", "--N", "8", "--level", "2",
                           "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rows"][0] == "11222"
    assert data["entries"][0] == ["1", "0", "4", "0", "0", "-16", "0", "0", "0"]


def test_matrix_text(capsys):
    code, out, _ = run_cli(capsys, "matrix", "--kind", "H", "--N", "8", "--level", "2")
    assert code == 0
    assert "11222" in out and "-1905" in out


def test_eval(capsys):
    code, out, _ = run_cli(capsys, "eval", "t(2,2)")
    assert code == 0 and out.strip() == "1/384*pi2^2"
    code, out, _ = run_cli(capsys, "eval", "t*(2,1;V)")
    assert code == 0 and "z3" in out
    code, out, err = run_cli(capsys, "eval", "t(2,1)")
    assert code == 2


def test_reg(capsys):
    code, out, _ = run_cli(capsys, "reg", "--scheme", "stuffle", "--param", "U", "t(2,1)")
    assert code == 0
    assert "(U) * z(2)" in out and "(-1) * z(3)" in out
    code, out, _ = run_cli(capsys, "reg", "--scheme", "shuffle", "--param", "0", "z_1(2)")
    assert code == 0 and "(-2) * z(3)" in out


def test_stuffle_shuffle(capsys):
    code, out, _ = run_cli(capsys, "stuffle", "t(2)", "t(1,2)")
    assert code == 0 and "z(1,2,2)" in out
    code, out, _ = run_cli(capsys, "shuffle", "10", "10", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"1010": "2", "1100": "4"}


def test_dr(capsys):
    code, out, _ = run_cli(capsys, "dr", "--r", "3", "t(2,1,2)")
    assert code == 0 and out.strip() == "(-7/2) * z3 (x) t~(2)"


def test_enumerate(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--kind", "S", "--N", "4")
    assert code == 0 and out.split() == ["22", "112", "13"]


def test_det(capsys):
    code, out, _ = run_cli(capsys, "det", "--kind", "Hstar", "--N", "3", "--level", "1")
    assert code == 0 and out.strip() == "-14 + 7*lam"
    code, out, _ = run_cli(capsys, "det", "--kind", "Hstar", "--N", "3", "--level", "1",
                           "--lam", "2")
    assert code == 0 and out.strip() == "0"


def test_num(capsys):
    code, out, _ = run_cli(capsys, "num", "t(2)", "--prec", "53", "--cutoff", "20000")
    assert code == 0 and out.startswith("1.2337")


def test_verify_counting(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "counting")
    assert code == 0 and "0 failures" in out


def test_report_requires_suite(capsys):
    code, out, err = run_cli(capsys, "report", "--suite", "")
    assert code == 2


def test_report_json(capsys):
    code, out, _ = run_cli(capsys, "report", "--suite", "counting")
    assert code == 0
    data = json.loads(out)
    assert all(item["status"] == "PASS" for item in data)


def test_deterministic_output(capsys):
    _, out1, _ = run_cli(capsys, "matrix", "--kind", "S", "--N", "8", "--level", "2",
                         "--format", "json")
    _, out2, _ = run_cli(capsys, "matrix", "--kind", "S", "--N", "8", "--level", "2",
                         "--format", "json")
    assert out1 == out2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "--kind", "X", "--N", "8", "--level", "2"])
    assert exc.value.code == 2
