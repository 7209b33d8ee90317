import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from quickspace import cli, run_space

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def weight_sum_from_json(rows):
    return sum((cli.rational_from_json(r["weight"]) for r in rows), F(0))


# -- enumerate ---------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_enumerate_csv_golden(n):
    code, text = run_cli("enumerate", "--n", str(n), "--format", "csv")
    assert code == 0
    assert text == (GOLDEN / f"enumerate_n{n}.csv").read_text()


def test_enumerate_table_uses_bottom_glyph():
    code, text = run_cli("enumerate", "--n", "3")
    assert code == 0
    assert "(1,⊥,(2,⊥,⊥))" in text and "_" not in text
    lines = text.strip().splitlines()
    assert len(lines) == 2 + 5


def test_enumerate_json_round_trip():
    code, text = run_cli("enumerate", "--n", "5", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["command"] == "enumerate" and doc["parameters"] == {"n": 5}
    rows = doc["rows"]
    assert len(rows) == run_space.catalan(5)
    assert weight_sum_from_json(rows) == 1
    for row in rows:
        run = run_space.run_from_tree(row["tree"])
        assert run == run_space.parse_run(row["run"])
        # recomputing weights from the tree reproduces the dump
        assert run_space.run_probability(run, 5) == cli.rational_from_json(row["weight"])
        assert run_space.comparisons(run, 5) == row["t"]
    assert sum(run_space.run_probability(run_space.run_from_tree(r["tree"]), 5) for r in rows) == 1


def test_enumerate_json_leaf_is_null():
    code, text = run_cli("enumerate", "--n", "2", "--format", "json")
    rows = json.loads(text)["rows"]
    assert rows[0]["tree"] == {"rank": 1, "left": None, "right": None}
    assert rows[0]["run"] == "(1,_,_)"
    assert rows[0]["weight"] == {"num": "1", "den": "2"}


def test_enumerate_too_large_is_usage_error():
    assert run_cli("enumerate", "--n", "13")[0] == 2
    assert run_cli("enumerate", "--n", "6", "--cap-enum", "5")[0] == 2


# -- table -------------------------------------------------------------------

def test_table_csv_rows():
    code, text = run_cli("table", "--n-max", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["n", "t_exact", "t_float", "bound_2nlnn", "runs"]
    assert rows[0]["t_exact"] == "0/1" and rows[0]["runs"] == "1"
    assert rows[2]["t_exact"] == "1/1" and rows[2]["runs"] == "2"
    assert rows[3]["t_exact"] == "8/3" and rows[3]["runs"] == "5"
    assert float(rows[3]["t_float"]) == pytest.approx(2.6667, abs=1e-4)
    assert float(rows[3]["bound_2nlnn"]) == pytest.approx(6.5917, abs=1e-4)


def test_table_columns_respect_caps():
    code, text = run_cli("table", "--n-max", "6", "--format", "json", "--cap-enum", "4", "--cap-exact", "5")
    rows = json.loads(text)["rows"]
    assert rows[4]["runs"] == 14 and rows[5]["runs"] is None
    assert rows[5]["t_exact"] == {"num": "37", "den": "5"} and rows[6]["t_exact"] is None
    assert rows[6]["t_float"] > 0


def test_table_human():
    code, text = run_cli("table", "--n-max", "3")
    assert code == 0
    last = text.strip().splitlines()[-1].split()
    assert last == ["3", "8/3", "2.6667", "6.5917", "5"]


# -- montecarlo ----------------------------------------------------------------

def test_montecarlo_two_elements():
    code, text = run_cli("montecarlo", "--n", "2", "--trials", "10", "--seed", "5", "--format", "json")
    assert code == 0
    report = json.loads(text)["report"]
    assert report["mean"] == 1.0 and report["variance"] == 0.0 and report["z"] == 0.0
    assert report["reference_exact"] == {"num": "1", "den": "1"}


def test_montecarlo_n100_seed42():
    code, text = run_cli("montecarlo", "--n", "100", "--trials", "100000", "--seed", "42", "--format", "json")
    report = json.loads(text)["report"]
    assert abs(report["z"]) <= 3
    assert report["stderr"] == pytest.approx(math.sqrt(report["variance"] / 100000))


def test_montecarlo_reproducible_output():
    args = ("montecarlo", "--n", "30", "--trials", "2000", "--seed", "8", "--format", "csv")
    assert run_cli(*args) == run_cli(*args)


def test_montecarlo_zero_trials():
    assert run_cli("montecarlo", "--n", "3", "--trials", "0")[0] == 2


def test_montecarlo_z_with_zero_variance_mismatch():
    from quickspace.simulator import TrialReport

    report = TrialReport(n=3, trials=4, mean=3.0, variance=0.0, seed=0, min=3, max=3)
    assert cli.montecarlo_summary(report, 2000)["z"] == math.inf


# -- verify ------------------------------------------------------------------

def test_verify_splitter():
    code, text = run_cli("verify", "splitter", "--n-max", "8")
    assert code == 0
    assert "1/(j-i+1)" in text and "FAIL" not in text


def test_verify_json_schema():
    code, text = run_cli("verify", "core-laws", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["command"] == "verify" and doc["parameters"]["suite"] == "core-laws"
    assert all(set(r) == {"check", "passed", "params", "detail"} and r["passed"] for r in doc["rows"])


def test_verify_unknown_suite():
    assert run_cli("verify", "bogus")[0] == 2


def test_verify_failure_exit_code(monkeypatch):
    from quickspace import verify

    monkeypatch.setitem(verify.SUITES, "space", lambda caps: [verify.Check("broken lemma", False, {}, "forced")])
    code, text = run_cli("verify", "space")
    assert code == 1 and "FAIL  broken lemma" in text


def test_usage_errors():
    assert run_cli()[0] == 2
    assert run_cli("table")[0] == 2
    assert run_cli("table", "--n-max", "-1")[0] == 2
    assert run_cli("enumerate", "--n", "2", "--format", "xml")[0] == 2


def test_verify_all_subprocess():
    proc = subprocess.run([sys.executable, "-m", "quickspace", "verify", "all"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
