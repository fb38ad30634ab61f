import csv
import io
import json
import math
import os
import shutil
import subprocess
import sys

import pytest

from formarea import bounds, cli
from formarea.cli import EXIT_ACCURACY, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, fmt_real, main
from formarea.families import make, psi_id
from formarea.polycore import discriminant
from formarea.quadrature import AccuracyError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def first_line(text):
    return text.splitlines()[0]


@pytest.mark.parametrize("argv, expected", [
    (("poly", "psi", "7"), "x^3 + x^2 - 2x - 1"),
    (("poly", "chebyshev-t", "3"), "4x^3 - 3x"),
    (("poly", "pi", "4"), "x - 2"),
])
def test_poly_examples(argv, expected):
    code, out, _ = run(*argv)
    assert code == EXIT_OK
    assert first_line(out) == expected


def test_poly_json_big_integers_are_strings():
    code, out, _ = run("poly", "chebyshev-t", "40", "--json")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["form_degree"] == 40
    assert all(isinstance(c, str) for c in rec["coefficients"])
    assert int(rec["coefficients"][-1]) == 2**39
    assert int(rec["discriminant"]) == 2 ** (39**2) * 40**40


def test_poly_binomial_needs_a_b():
    assert run("poly", "binomial", "5")[0] == EXIT_USAGE
    code, out, _ = run("poly", "binomial", "5", "--a", "2", "--b", "-3")
    assert code == EXIT_OK and first_line(out) == "2x^5 - 3"


@pytest.mark.parametrize("argv, printed", [
    (("area", "s", "4"), "10.4882"),
    (("area", "chebyshev-u", "6"), "3.04985"),
    (("area", "chebyshev-t", "6"), "3.52082"),
])
def test_area_examples(argv, printed):
    code, out, _ = run(*argv)
    assert code == EXIT_OK
    value = first_line(out)
    assert len(value.replace(".", "").lstrip("0")) <= 12
    assert abs(float(value) - float(printed)) < 1e-4


def test_area_divergent_prints_inf():
    code, out, _ = run("area", "psi", "8")
    assert code == EXIT_OK and first_line(out) == "inf"
    rec = json.loads(run("area", "psi", "8", "--json")[1])
    assert rec["value"] == "inf" and rec["status"] == "Divergent"


def test_area_json_roundtrip():
    rec = json.loads(run("area", "chebyshev-t", "5", "--json")[1])
    assert rec["status"] == "Finite"
    assert fmt_real(float(rec["value"])) == rec["value"]


def test_accuracy_failure_exit_code(monkeypatch):
    def unreachable(f, cfg):
        raise AccuracyError("tanh-sinh did not converge", 3.5, 1e-3)

    monkeypatch.setattr(cli, "area_integral", unreachable)
    code, out, err = run("area", "chebyshev-t", "9")
    assert code == EXIT_ACCURACY and out == ""
    assert "accuracy failure" in err and "3.5" in err


@pytest.mark.parametrize("argv", [
    ("area", "psi", "0"),
    ("area", "nope", "3"),
    ("bounds", "psi", "8"),
    ("bounds", "s", "5"),
    ("bounds", "chebyshev-t", "4", "--alpha", "0.2"),
    ("curve", "s", "6", "--samples", "4"),
    ("limits", "chebyshev-t", "--n-list", "a,b"),
    ("limits", "chebyshev-t", "--n-list", ""),
    ("verify", "--only", "tables,bogus"),
    ("area", "s", "4", "--tol", "2"),
    ("frobnicate",),
    (),
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == EXIT_USAGE
    assert err.startswith("formarea: usage error")


@pytest.mark.parametrize("family, n", [("chebyshev-t", "6"), ("psi", "7"), ("chebyshev-u", "9")])
def test_bounds_pass(family, n):
    code, out, _ = run("bounds", family, n)
    assert code == EXIT_OK
    lines = dict(line.split(" ", 1) for line in out.splitlines())
    assert lines["verdict"] == "PASS"
    assert float(lines["lower"]) < float(lines["computed"]) < float(lines["upper"])
    assert float(lines["lower_margin"]) > 0 and float(lines["upper_margin"]) > 0


def test_bounds_alpha_json():
    rec = json.loads(run("bounds", "chebyshev-t", "6", "--alpha", "0.5", "--json")[1])
    assert rec["verdict"] == "PASS" and rec["alpha"] == "0.5"


def test_bounds_failure_exit_code(monkeypatch):
    monkeypatch.setattr(bounds, "tn_area_bounds", lambda n: (3.6, 3.7))
    code, out, _ = run("bounds", "chebyshev-t", "6")
    assert code == EXIT_VERIFY and "FAIL" in out


@pytest.fixture(scope="module")
def tables_csv():
    code, out, _ = run("tables", "--factored")
    assert code == EXIT_OK
    return out


def _csv_blocks(text):
    return [list(csv.DictReader(io.StringIO(block))) for block in text.split("\n\n")]


def test_tables_csv_layout(tables_csv):
    assert "\r" not in tables_csv
    t1, t2 = _csv_blocks(tables_csv)
    assert list(t1[0]) == ["n", "family", "discriminant", "factored", "area", "printed"]
    assert list(t2[0]) == ["n", "family", "q", "printed"]
    assert len(t1) == len(t2) == 35


def test_tables_csv_examples(tables_csv):
    t1, t2 = _csv_blocks(tables_csv)
    r = {(row["family"], row["n"]): row for row in t1}
    q = {(row["family"], row["n"]): row for row in t2}
    assert r[("pi", "5")]["discriminant"] == "2000" and r[("pi", "5")]["factored"] == "2^4*5^3"
    assert r[("pi", "5")]["printed"] == "5.78302"
    assert r[("chebyshev-t", "3")]["factored"] == "2^4*3^3"
    assert r[("psi", "8")]["area"] == "inf"
    assert q[("s", "4")]["printed"] == "11.7726"
    assert q[("psi", "7")]["printed"] == "15.8997"
    assert q[("pi", "6")]["q"] == "inf"


def test_tables_big_integers_exact(tables_csv):
    t1, _ = _csv_blocks(tables_csv)
    assert all(row["discriminant"].isdigit() for row in t1)
    u9 = next(row for row in t1 if row["family"] == "chebyshev-u" and row["n"] == "9")
    assert int(u9["discriminant"]) == 2**88 * 5**7


def test_tables_which_and_json():
    code, out, _ = run("tables", "--which", "2")
    assert code == EXIT_OK and out.splitlines()[0] == "n,family,q,printed"
    rec = json.loads(run("tables", "--json")[1])
    assert set(rec) == {"table1", "table2"}
    psi7 = next(r for r in rec["table1"] if r["family"] == "psi" and r["n"] == "7")
    d = discriminant(make(psi_id(7)))
    assert int(psi7["discriminant"]) == d


def test_curve_cardinality_and_rays():
    code, out, _ = run("curve", "chebyshev-t", "6", "--samples", "8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 8
    code, out, _ = run("curve", "psi", "13", "--samples", "720")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert any(r["x"] == "ray" for r in rows)


def test_curve_s6_twelvefold_symmetry():
    # S_6 vanishes along theta = k pi/6, so rays sit every 60 samples
    rows = list(csv.DictReader(io.StringIO(run("curve", "s", "6", "--samples", "720")[1])))
    rays = [k for k, r in enumerate(rows) if r["x"] == "ray"]
    assert rays == list(range(0, 720, 60))
    for k in range(720):
        if k not in rays:
            r0 = math.hypot(float(rows[k]["x"]), float(rows[k]["y"]))
            r1 = math.hypot(float(rows[(k + 60) % 720]["x"]), float(rows[(k + 60) % 720]["y"]))
            assert r0 == pytest.approx(r1, rel=1e-9)


def test_curve_out_file(tmp_path):
    path = tmp_path / "curve.csv"
    code, out, _ = run("curve", "s", "6", "--samples", "16", "--out", str(path))
    assert code == EXIT_OK and out == ""
    data = path.read_bytes()
    assert b"\r" not in data and data.decode("utf-8").startswith("theta,x,y\n")
    assert len(data.decode().splitlines()) == 17


def test_out_to_unwritable_path(tmp_path):
    code, _, err = run("curve", "s", "6", "--samples", "16", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == EXIT_USAGE and "missing" in err


def test_limits_binomial_default():
    code, out, _ = run("limits", "binomial", "--n-list", "10,50,200")
    rows = list(csv.DictReader(io.StringIO(out)))
    dist = [float(r["distance"]) for r in rows]
    assert code == EXIT_OK and dist == sorted(dist, reverse=True)


def test_limits_chebyshev_json():
    rec = json.loads(run("limits", "chebyshev-t", "--n-list", "10,20,40", "--json")[1])
    dist = [float(r["distance"]) for r in rec["rows"]]
    assert dist == sorted(dist, reverse=True)
    assert float(rec["limit"]) == pytest.approx(8 / 3)


def test_limits_psi_runs():
    code, out, _ = run("limits", "psi", "--n-list", "7,9,11,13")
    assert code == EXIT_OK and len(out.splitlines()) == 5


def test_verify_subset():
    code, out, _ = run("verify", "--only", "tables")
    assert code == EXIT_OK
    body = out.splitlines()
    assert all("[tables]" in line for line in body[:-1])
    assert body[-1].endswith("0 failed")
    assert sum(line.startswith("XFAIL") for line in body) == 5


def test_verify_json():
    rec = json.loads(run("verify", "--only", "special,discriminants", "--json")[1])
    assert {r["group"] for r in rec} == {"special", "discriminants"}
    assert all(r["status"] == "PASS" for r in rec)


def test_verify_fault_injection(monkeypatch):
    original = bounds.q_comparison_bounds
    monkeypatch.setattr(bounds, "q_comparison_bounds", lambda n: (original(n)[0], original(n)[1] + 0.01 * 8 / 3))
    code, out, _ = run("verify", "--only", "qcompare")
    assert code == EXIT_VERIFY and "FAIL  [qcompare] bound route n = 10" in out


@pytest.mark.parametrize("x, expected", [(math.inf, "inf"), (1 / 3, "0.333333333333"), (2.0, "2"),
                                         (1234567.891011121, "1234567.89101")])
def test_fmt_real(x, expected):
    assert fmt_real(x) == expected


def _script():
    exe = shutil.which("formarea")
    return [exe] if exe else [sys.executable, "-m", "formarea.cli"]


def test_console_script_and_thread_cap():
    env = dict(os.environ, FORMAREA_THREADS="2")
    proc = subprocess.run(_script() + ["area", "chebyshev-t", "6"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert abs(float(proc.stdout.splitlines()[0]) - 3.52082) < 1e-5
    proc = subprocess.run(_script() + ["bounds", "psi", "8"], capture_output=True, text=True)
    assert proc.returncode == 1
