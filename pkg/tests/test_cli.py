import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bicomplex_hilbert import cli
from bicomplex_hilbert.core import parse_bicomplex


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "bicomplex_hilbert", *args],
                          input=stdin, capture_output=True, text=True)


def invoke(capsys, *args, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = cli.main(list(args))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_module_entry_point():
    r = run("gram", "--lmax", "2")
    assert r.returncode == 0
    assert len(r.stdout.splitlines()) == 3


def test_eval_defaults(capsys):
    code, out, _ = invoke(capsys, "eval", "--lmax", "0")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "phi_0"]
    assert len(rows) == 1 + 241
    x0 = next(r for r in rows[1:] if float(r[0]) == 0.0)
    v = parse_bicomplex(x0[1])
    assert v.z1_hat == pytest.approx(math.pi ** -0.25) and v.z2_hat == pytest.approx(math.pi ** -0.25)


def test_eval_two_points_and_symmetric_xi(capsys):
    code, out, _ = invoke(capsys, "eval", "--grid-points", "2", "--xi1", "2.5", "--xi2", "2.5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    for cell in rows[1][1:]:
        a, b = cell.split(";")
        assert a == b


def test_eval_json(capsys, tmp_path):
    target = tmp_path / "phi.json"
    code, _, _ = invoke(capsys, "eval", "--grid-points", "3", "--lmax", "1", "--format", "json", "--output", str(target))
    data = json.loads(target.read_text())
    assert code == 0 and len(data) == 3 and set(data[0]) == {"x", "phi_0", "phi_1"}


def test_eval_uses_17_digits(capsys):
    _, out, _ = invoke(capsys, "eval", "--grid-points", "2", "--lmax", "0", "--grid-min", "-0.1", "--grid-max", "0.3")
    cell = out.splitlines()[1].split(",")[1].split(";")[0]
    assert cell == format(math.pi ** -0.25 * math.exp(-0.005), ".17g") + "+0i1"


@pytest.mark.parametrize("args, code", [
    (["gram", "--lmax", "4"], 0),
    (["gram", "--lmax", "20", "--xi2", "2"], 0),
    (["gram", "--tol", "0"], 3),
    (["gram", "--lmax", "21"], 2),
])
def test_gram_exit_codes(capsys, args, code):
    assert invoke(capsys, *args)[0] == code


def test_gram_csv_shape(capsys):
    _, out, err = invoke(capsys, "gram", "--lmax", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)
    assert "max deviation" in err


@pytest.mark.parametrize("args, code", [
    ([], 0),
    (["--xi2", "3"], 0),
    (["--m", "2.5", "--hbar", "0.3", "--xi1", "0.2"], 0),
    (["--tol", "1e-30"], 3),
])
def test_commutator_exit_codes(capsys, args, code):
    assert invoke(capsys, "commutator", *args)[0] == code


def test_commutator_report(capsys):
    _, out, _ = invoke(capsys, "commutator", "--format", "json")
    report = json.loads(out)
    assert report["pass"] and report["max_residual"] <= 1e-12
    assert "f_{6,2.0}" in report["residuals"]


def test_riesz_examples(capsys, monkeypatch):
    code, out, _ = invoke(capsys, "riesz", stdin="1\n0\n0\n", monkeypatch=monkeypatch)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [parse_bicomplex(r[1]) for r in rows[1:]][0].z1_hat == 1
    code, out, _ = invoke(capsys, "riesz", "--format", "json", stdin='["j", "i1"]', monkeypatch=monkeypatch)
    rep = [parse_bicomplex(s) for s in json.loads(out)["representer"]]
    assert code == 0
    assert (rep[0].z1_hat, rep[0].z2_hat) == (1, -1)
    assert (rep[1].z1_hat, rep[1].z2_hat) == (-1j, -1j)


def test_riesz_from_file(capsys, tmp_path):
    path = tmp_path / "values.txt"
    path.write_text("[1, 2]\n(0+1i1) + (0+0i1) i2\n")
    assert invoke(capsys, "riesz", "--input", str(path))[0] == 0
    assert invoke(capsys, "riesz", "--input", str(tmp_path / "missing"))[0] == 2


@pytest.mark.parametrize("text", ["abc\n", "[1, 2\n", "", '["1", "x"]'])
def test_riesz_malformed(capsys, monkeypatch, text):
    code, _, err = invoke(capsys, "riesz", stdin=text, monkeypatch=monkeypatch)
    assert code == 2 and "error" in err


def test_orthonormalize(capsys, monkeypatch):
    code, out, _ = invoke(capsys, "orthonormalize", stdin='[["1", "0"], ["1", "1"]]', monkeypatch=monkeypatch)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [[parse_bicomplex(c).z1_hat for c in r] for r in rows] == [[1, 0], [0, 1]]


@pytest.mark.parametrize("text", ['[["e1", "0", "0"]]', "not json", '{"a": 1}', '[["1"], ["1", "2"]]'])
def test_orthonormalize_bad_input(capsys, monkeypatch, text):
    assert invoke(capsys, "orthonormalize", stdin=text, monkeypatch=monkeypatch)[0] == 2


@pytest.mark.parametrize("args", [
    ["gram", "--m", "0"],
    ["gram", "--omega", "-1"],
    ["eval", "--hbar", "nan"],
    ["eval", "--xi1", "0"],
    ["eval", "--grid-points", "1"],
    ["eval", "--grid-min", "2", "--grid-max", "1"],
    ["gram", "--lmax", "-1"],
    ["gram", "--tol", "-1"],
    ["gram", "--lmax", "eight"],
    ["gram", "--format", "xml"],
    ["frobnicate"],
    [],
])
def test_malformed_flags_exit_2(args):
    r = run(*args)
    assert r.returncode == 2
    assert "error" in r.stderr


def test_error_names_flag():
    r = run("eval", "--xi2", "-3")
    assert "--xi2" in r.stderr
