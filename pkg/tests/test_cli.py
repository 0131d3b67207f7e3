import json
from pathlib import Path

import pytest

from herzog.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_collapse_four_cycle(capsys):
    code, rep, _ = call(capsys, "collapse", DATA / "cycle4.json")
    assert code == EXIT_OK and rep["ell"] == 0 and not rep["is_tree"] and rep["branches"]["agree"]


def test_collapse_star(capsys):
    code, rep, _ = call(capsys, "collapse", DATA / "star.json")
    assert rep["ell"] == rep["n"] == 3 and rep["is_tree"]


def test_gb_on_rational_normal_quartic(capsys):
    code, rep, _ = call(capsys, "gb", DATA / "rnc4.ideal")
    assert code == EXIT_OK and rep["squarefree"]
    assert rep["initial_ideal"] == "(X0*X2, X0*X3, X0*X4, X1*X3, X1*X4, X2*X4)"


def test_initial_reports_the_complex(capsys):
    _, rep, _ = call(capsys, "initial", DATA / "star.ideal")
    assert rep["complex"]["facets"] == [[0, 3], [1, 3], [2, 3]]


def test_smooth_and_genus(capsys):
    code, rep, _ = call(capsys, "genus", DATA / "star.ideal", "--field", "Fp:5")
    assert code == EXIT_OK and rep["smooth"] is True and rep["genus"] == 0
    assert rep["provenance"]["field"] == "Fp:5"


def test_inconclusive_exit(capsys):
    code, rep, _ = call(capsys, "smooth", DATA / "star.ideal", "--power-bound", "1")
    assert code == EXIT_BUDGET and rep["smooth"] == "inconclusive"


def test_degree_ceiling_exit(capsys, tmp_path):
    f = tmp_path / "c.ideal"
    f.write_text("X0^3 - X1^2*X2\nX0*X2^2 - X1^3\n")
    code, _, err = call(capsys, "gb", f, "--degree-ceiling", "4")
    assert code == EXIT_BUDGET and "budget" in err


def test_eliminate_routes(capsys):
    _, block, _ = call(capsys, "eliminate", DATA / "star.ideal")
    _, extract, _ = call(capsys, "eliminate", DATA / "star.ideal", "--route", "extract")
    assert len(block["generators"]) == len(extract["generators"]) == 1


def test_project_and_fiber(capsys):
    code, rep, _ = call(capsys, "project", DATA / "rnc4.ideal")
    assert code == EXIT_OK and len(rep["projection"]) == 3
    code, rep, _ = call(capsys, "fiber", DATA / "rnc4.ideal", "--a", "4")
    assert code == EXIT_OK and rep["Q"] == ["0", "0", "0", "0", "1"] and rep["Q_nonsingular"]


def test_homology(capsys):
    _, rep, _ = call(capsys, "homology", DATA / "cycle4.json")
    assert rep["fields"]["QQ"]["reduced_homology"]["1"] == 1
    assert rep["fields"]["Fp:2"]["cohen_macaulay"] and not rep["fields"]["Fp:2"]["a_invariant_negative"]


def test_sweep_with_table(capsys):
    code, rep, err = call(capsys, "sweep", DATA / "sweep_cycle4_f2.json", "--table")
    assert code == EXIT_OK and rep["passed"] and rep["counts"]["smooth"] == 0
    assert "PASS" in err and "elapsed_seconds" not in rep


def test_repeat_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["sweep", str(DATA / "sweep_triangle_f3.json"), "--out", str(out)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    prov = json.loads(a.read_text())["provenance"]
    assert set(prov) >= {"tool", "input_sha256", "order", "field", "seed", "degree_ceiling", "power_bound"}


def test_timing_is_opt_in(capsys):
    _, rep, _ = call(capsys, "sweep", DATA / "sweep_triangle_f3.json", "--timing")
    assert "elapsed_seconds" in rep


@pytest.mark.parametrize("argv", [
    ["gb", "missing.ideal"],
    ["gb", "DATA/star.ideal", "--field", "Fp:4"],
    ["gb", "DATA/rnc4.ideal", "--field", "Fp:2"],
    ["collapse", "DATA/star.ideal"],
    ["nonsense"],
])
def test_input_errors(capsys, argv):
    argv = [a.replace("DATA", str(DATA)) for a in argv]
    code, _, err = call(capsys, *argv)
    assert code == EXIT_INPUT and err


def test_mismatch_message(capsys):
    code, _, err = call(capsys, "gb", DATA / "rnc4.ideal", "--field", "Fp:2")
    assert code == EXIT_INPUT and "QQ" in err and "Fp:2" in err


def test_fiber_hypothesis_failure(capsys):
    code, _, err = call(capsys, "fiber", DATA / "rnc4.ideal", "--a", "1")
    assert code == EXIT_INPUT and "X0*X1" in err


def test_verify_examples(capsys):
    code, rep, err = call(capsys, "verify-examples", "--table")
    assert code == EXIT_OK and rep["passed"] and "FAIL" not in err
