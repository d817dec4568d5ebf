import io
import json
import subprocess
import sys

import pytest

from pcii.cli import run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def m253_file(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("2,5\n3\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def bad_file(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("9,0.1,9\n0.1,9\n9\n", encoding="utf-8")
    return str(path)


def test_analyze_m253(m253_file):
    code, out, _ = run("analyze", "--input", m253_file, "--format", "csv-upper", "--output", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["matrix_kii"] == pytest.approx(1 / 6, abs=1e-15)
    assert doc["consistent"] is True
    assert doc["tolerance"] == 1 / 3
    assert doc["worst_triad"] == [0, 1, 2]


def test_analyze_text(m253_file):
    code, out, _ = run("analyze", "--input", m253_file, "--format", "csv-upper")
    assert code == 0
    assert "verdict: consistent" in out


def test_strict_verdict(bad_file):
    assert run("analyze", "--input", bad_file, "--format", "csv-upper")[0] == 0
    code, out, _ = run("analyze", "--input", bad_file, "--format", "csv-upper", "--strict")
    assert code == 1
    assert "inconsistent" in out


def test_tolerance_flag(m253_file):
    code, out, _ = run("analyze", "--input", m253_file, "--format", "csv-upper",
                       "--tolerance", "0.1", "--strict", "--output", "structured")
    assert code == 1
    assert json.loads(out)["consistent"] is False


def test_counterexample():
    code, out, _ = run("counterexample", "--x", "2", "--nmax", "10", "--output", "structured")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 10
    assert all(r["distance"] == 1.0 for r in rows)
    assert rows[0]["kii"] == pytest.approx(0.2, abs=1e-12)


def test_counterexample_text_table():
    code, out, _ = run("counterexample", "--x", "2", "--nmax", "10")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 11
    assert all(line.split()[3] == "1" for line in lines[1:])


def test_counterexample_overflow_is_domain_error():
    code, _, err = run("counterexample", "--x", "2", "--nmax", "600")
    assert code == 1 and "overflow" in err


def test_reconstruct():
    code, out, _ = run("reconstruct", "--n", "4", "--generators", "2,3,4", "--output", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["matrix"][0][3] == 24.0
    assert doc["matrix_kii"] == 0.0


def test_reconstruct_bad_list():
    code, _, err = run("reconstruct", "--n", "4", "--generators", "2,x,4")
    assert code == 2 and "comma-separated" in err


def test_reconstruct_wrong_count():
    assert run("reconstruct", "--n", "4", "--generators", "2,3")[0] == 1


def test_triads(tmp_path):
    path = tmp_path / "m4.csv"
    path.write_text("2,6,20\n3,9\n3\n", encoding="utf-8")
    code, out, _ = run("triads", "--input", str(path), "--format", "csv-upper", "--output", "structured")
    doc = json.loads(out)
    assert code == 0 and len(doc["triads"]) == 4
    assert doc["command"] == "triads"


def test_reduce(bad_file):
    code, out, _ = run("reduce", "--input", bad_file, "--format", "csv-upper", "--output", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["converged"] is True
    assert doc["steps"][-1]["matrix_kii"] < 1 / 3


def test_reduce_strict_non_convergence(bad_file):
    code, out, _ = run("reduce", "--input", bad_file, "--format", "csv-upper",
                       "--max-iter", "0", "--strict")
    assert code == 1 and "converged: no" in out


def test_sticks():
    code, out, _ = run("sticks", "--output", "structured")
    doc = json.loads(out)
    assert code == 0
    assert doc["A"]["distance"] == doc["B"]["distance"] == 1.0
    assert doc["A"]["relative_error_true"] == 1.0
    assert run("sticks")[1].count("%") == 2


def test_montecarlo():
    code, out, _ = run("montecarlo", "--n", "3", "--trials", "100", "--seed", "5", "--output", "structured")
    doc = json.loads(out)
    assert code == 0
    assert set(doc["indicators"]) == {"kii", "distance", "ci"}


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["analyze"],
    ["analyze", "--input", "m.csv", "--format", "tsv"],
    ["counterexample", "--nmax", "ten"],
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert "usage:" in err


def test_missing_file(tmp_path):
    code, _, err = run("analyze", "--input", str(tmp_path / "nope.csv"))
    assert code == 2


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("1,2\n0.5,abc\n", encoding="utf-8")
    code, _, err = run("analyze", "--input", str(path))
    assert code == 2 and "line 2" in err and "column 2" in err


def test_validation_error_exit_code(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("2,-5\n3\n", encoding="utf-8")
    code, _, err = run("analyze", "--input", str(path), "--format", "csv-upper")
    assert code == 1 and "cell (0, 2)" in err


def test_too_small_for_analysis(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("3\n", encoding="utf-8")
    assert run("analyze", "--input", str(path), "--format", "csv-upper")[0] == 1


def test_module_entry_point(m253_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pcii", "analyze", "--input", m253_file, "--format", "csv-upper"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "matrix Kii" in proc.stdout
