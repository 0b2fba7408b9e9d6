import io
import json
import math
from fractions import Fraction

import pytest

from orthoderiv import csvio
from orthoderiv.cli import main
from orthoderiv.kernel import KernelSpec, kernel_from_json, kernel_legendre_sum


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_kernel_table():
    code, out, _ = run("kernel", "--n", "1", "--m", "1", "--format", "table")
    assert code == 0
    assert "-(75/8)t + (105/8)t^3" in out


def test_kernel_plain_m0():
    code, out, _ = run("kernel", "--n", "1", "--m", "0")
    assert code == 0
    assert "-(3/2)t" in out


def test_kernel_json_round_trip():
    code, out, _ = run("kernel", "--n", "3", "--m", "2", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["n"] == 3 and d["m"] == 2
    assert all(isinstance(p, str) and isinstance(q, str) for p, q in d["coeffs"])
    assert kernel_from_json(out).k == kernel_legendre_sum(KernelSpec(3, 2)).k


@pytest.mark.parametrize("argv", [
    ("kernel", "--n", "0"),
    ("kernel", "--n", "-1"),
    ("kernel", "--n", "1", "--m", "-1"),
    ("kernel", "--n", "x"),
    ("kernel",),
    ("bogus",),
    (),
    ("kernel", "--n", "1", "--format", "latex"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_guard():
    code, _, err = run("kernel", "--n", "1", "--m", "100")
    assert code == 3 and "200" in err


def test_omega():
    code, out, _ = run("omega", "--n", "1", "--m", "0")
    assert code == 0 and out.startswith("omega(t) =")
    code, out, _ = run("omega", "--n", "2", "--m", "1", "--format", "json")
    assert json.loads(out)["m"] == 1


def test_moments():
    code, out, err = run("moments", "--n", "2", "--m", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,moment"
    vals = {int(j): Fraction(v) for j, v in (ln.split(",") for ln in lines[1:])}
    assert vals[2] == 2 and all(vals[j] == 0 for j in range(6) if j != 2)
    assert err.startswith("PASS")


def test_liptaj_33():
    code, out, _ = run("liptaj", "--n", "3", "--m", "3")
    assert code == 0
    for s in ("a_2 = -15", "a_4 = 51", "a_6 = -323/7"):
        assert s in out
    assert out.rstrip().endswith("PASS")
    assert "FAIL" not in out


def test_liptaj_10():
    code, out, _ = run("liptaj", "--n", "1", "--m", "0")
    assert code == 0
    assert "a_0 = 1" in out and "a_2" not in out
    # single equation: K integral (1-t^2) * (-2t) t dt = -1
    assert "K = 3/4" in out


def test_liptaj_24():
    code, out, _ = run("liptaj", "--n", "2", "--m", "4")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_diff_x9():
    code, out, err = run("diff", "--n", "3", "--m", "3", "--h", "0.1", "--fn", "x^9", "--at", "1.0")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "x,derivative"
    x, d = rows[1].split(",")
    assert float(x) == 1.0
    assert abs(float(d) - 504) < 1e-8 * 504
    assert "points=1" in err and "degree=9" in err


def _diff_value(*argv):
    code, out, _ = run("diff", *argv)
    assert code == 0
    return float(out.splitlines()[1].split(",")[1])


def test_diff_sin_literal_tolerance():
    # the stated 1e-4 is below the leading error (1/10) h^2 |cos 0| = 2.5e-4
    d = _diff_value("--n", "1", "--m", "0", "--h", "0.05", "--fn", "sin", "--at", "0")
    assert abs(d - 1) < 1e-4


def test_diff_sin_error_constant():
    d = _diff_value("--n", "1", "--m", "0", "--h", "0.05", "--fn", "sin", "--at", "0")
    assert abs(d - 1) == pytest.approx(0.1 * 0.05 ** 2, rel=0.01)


def test_diff_constant_csv(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("x,value\n" + "".join(f"{i * 0.01!r},3.25\n" for i in range(200)))
    o = tmp_path / "d.csv"
    code, out, err = run("diff", "--n", "2", "--m", "1", "--h", "0.1", "--input", str(p), "--out", str(o))
    assert code == 0
    rows = o.read_text().splitlines()[1:]
    assert len(rows) == 200 - 20
    assert all(abs(float(r.split(",")[1])) < 1e-10 for r in rows)
    assert "warning" in err and "points=180" in out


def test_diff_index_range(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("x,value\n" + "".join(f"{i * 0.01!r},{(i * 0.01) ** 2!r}\n" for i in range(100)))
    code, out, _ = run("diff", "--n", "1", "--m", "1", "--h", "0.1", "--input", str(p), "--index", "40:43")
    assert code == 0
    rows = [r.split(",") for r in out.splitlines()[1:]]
    assert len(rows) == 3
    for x, d in rows:
        assert float(d) == pytest.approx(2 * float(x), abs=1e-9)


def test_diff_all_fail(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("x,value\n" + "".join(f"{i * 0.01!r},0\n" for i in range(30)))
    code, _, err = run("diff", "--n", "1", "--h", "0.1", "--input", str(p), "--index", "0:5")
    assert code == 4
    assert err.count("warning") == 5


def test_diff_data_errors(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x,value\n0,1\n1,2\n3,4\n")
    assert run("diff", "--n", "1", "--h", "0.1", "--input", str(p))[0] == 4
    assert run("diff", "--n", "1", "--h", "0.1", "--input", str(tmp_path / "missing.csv"))[0] == 4


def test_diff_usage():
    assert run("diff", "--n", "1", "--h", "0.1", "--fn", "tan", "--at", "0")[0] == 2
    assert run("diff", "--n", "1", "--h", "0.1", "--fn", "sin")[0] == 2
    assert run("diff", "--n", "1", "--h", "-1", "--fn", "sin", "--at", "0")[0] == 2
    assert run("diff", "--n", "1", "--h", "0.1")[0] == 2


def _sweep(out):
    return csvio.read_sweep(io.StringIO(out))


def test_transfer_low_frequency():
    code, out, err = run("transfer", "--n", "1", "--m", "0", "--h", "1", "--omega-max", "0.001")
    assert code == 0
    rows = _sweep(out)
    assert len(rows) == 200
    assert all(abs(r[3] / r[0] - 1) < 1e-4 for r in rows)
    assert "peak_omega=" in err and "omega_max_estimate=" in err


def test_transfer_linear_zero():
    code, out, _ = run("transfer", "--n", "2", "--m", "1", "--h", "0.1", "--linear",
                       "--omega-max", "50", "--points", "11")
    assert code == 0
    rows = _sweep(out)
    assert rows[0][0] == 0 and rows[0][3] == 0 and rows[0][4] is None
    assert out.splitlines()[1] == "0,0,0,0,,"


def test_transfer_peak_ratio_example():
    code, _, err = run("transfer", "--n", "2", "--m", "0", "--h", "0.01", "--log", "--points", "500")
    assert code == 0
    ratio = float(err.split("ratio=")[1])
    assert 0.8 <= ratio <= 1.2


@pytest.mark.parametrize("argv", [
    ("--omega-min", "10", "--omega-max", "1"),
    ("--omega-min", "0", "--log"),
    ("--points", "1"),
    ("--log", "--linear"),
])
def test_transfer_invalid_range(argv):
    assert run("transfer", "--n", "1", "--h", "0.1", *argv)[0] == 2


def test_seventeen_digits():
    _, out, _ = run("transfer", "--n", "1", "--h", "1", "--omega-max", "3", "--points", "5", "--linear")
    for row in out.splitlines()[2:]:
        for field in row.split(",")[:4]:
            mant = field.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
            assert len(mant) <= 17
            assert float(field) == float("%.17g" % float(field))
    _, out, _ = run("diff", "--n", "1", "--h", "0.5", "--fn", "exp", "--at", "0.3")
    d = out.splitlines()[1].split(",")[1]
    assert len(d.replace(".", "").replace("-", "").lstrip("0")) >= 15


def test_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run("transfer", "--n", "3", "--m", "2", "--h", "0.05", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    for p in (a, b):
        assert run("diff", "--n", "2", "--m", "2", "--h", "0.2", "--fn", "gaussian",
                   "--at", "-1", "0", "0.5", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_appendix():
    code, out, _ = run("verify", "--scope", "appendix")
    lines = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert len(lines) == 30 and all(ln.startswith("PASS") for ln in lines)
    assert sum("typo" in ln for ln in lines) == 1


def test_verify_firstderiv():
    code, out, _ = run("verify", "--scope", "firstderiv")
    assert code == 0
    assert any(ln.startswith("PASS") and "h_0" in ln and "9/10" in ln for ln in out.splitlines())


def test_verify_spectral():
    code, out, _ = run("verify", "--scope", "spectral")
    ag = [ln for ln in out.splitlines() if "analytic vs empirical" in ln]
    assert ag and all(ln.startswith("PASS") for ln in ag)
    assert code == 0


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "orthoderiv", "kernel", "--n", "2", "--m", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "k_0(t)" in r.stdout
