import json

import pytest

from x1curves.cli import main
from x1curves.ec import ShortWCurve, has_exact_order


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_derive(capsys):
    code, out = run(capsys, "--format", "json", "derive", "8")
    assert code == 0
    obj = json.loads(out.out)
    assert obj["N"] == 8 and obj["F"]["vars"] == ["r", "s"]


def test_derive_text_multiples(capsys):
    code, out = run(capsys, "derive", "9", "--show-multiples")
    assert code == 0 and "x_2 = " in out.out and "F(r,s) = " in out.out


def test_optimize_small(capsys):
    code, out = run(capsys, "--format", "json", "optimize", "11", "--radius", "4")
    assert code == 0
    obj = json.loads(out.out)
    assert obj["vector"][0] == 2


def test_optimize_from_file(tmp_path, capsys):
    f = tmp_path / "curve.txt"
    f.write_text("x + y\n")
    code, out = run(capsys, "optimize", "0", "--from-file", str(f), "--radius", "2")
    assert code == 0 and "vector" in out.out


def test_generate_json(capsys):
    code, out = run(capsys, "--seed", "3", "--format", "json", "generate", "--N", "13", "--p", "1009", "--count", "4")
    assert code == 0
    curves = json.loads(out.out)
    assert len(curves) == 4
    for c in curves:
        assert all(isinstance(c[k], str) for k in ("p", "A", "B"))
        w = ShortWCurve(int(c["A"]), int(c["B"]), int(c["p"]))
        assert has_exact_order(w, tuple(map(int, c["point"])), 13)


def test_generate4n(capsys):
    code, out = run(capsys, "--seed", "1", "--format", "json", "generate4n", "--N", "5", "--p", "1000003", "--count", "2")
    assert code == 0
    assert all(c["N"] == 20 for c in json.loads(out.out))


def test_generate4n_forbid(capsys):
    code, out = run(capsys, "--quiet", "generate4n", "--N", "5", "--p", "10007", "--count", "2", "--forbid")
    assert code == 0 and out.out == ""


def test_export(tmp_path, capsys):
    code, out = run(capsys, "export", "--out", str(tmp_path), "--tables", "text")
    assert code == 0 and (tmp_path / "x1_tables.txt").exists()


def test_verify_quick(capsys):
    code, out = run(capsys, "verify", "--primes", "1", "--skip-raw")
    assert code == 0 and "FAIL" not in out.out


def test_errors_exit_nonzero(capsys):
    assert run(capsys, "generate", "--N", "29", "--p", "1009")[0] == 1
    assert run(capsys, "generate", "--N", "13", "--p", "1000")[0] == 1
    with pytest.raises(SystemExit):
        main(["bogus"])
