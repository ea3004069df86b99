import json

import pytest

from hyperjac import __version__
from hyperjac.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *args):
    code, out, _ = run(capsys, *args, "--format", "json")
    return code, json.loads(out)


def test_report_fermat(capsys):
    code, rep = run_json(capsys, "report", "--example", "fermat:2:4")
    assert code == 0
    assert set(rep) >= {"input", "seed", "version", "analyses"}
    an = rep["analyses"]
    assert an["hilbert"]["hilbert"] == [1, 3, 3, 3, 1]
    assert an["milnor"]["2"]["series"] == {"polynomial": [1, 3, 3, 1], "tail_value": 0, "tail_from": None}
    assert {"i": 1, "j": 2, "beta": 3} in an["betti"]["table"]
    assert an["hess_membership"]["member"] is False
    assert an["lefschetz"]["trials"] == 3 and an["lefschetz"]["seed"] == 0
    assert rep["version"] == __version__


def test_milnor_e6(capsys):
    code, rep = run_json(capsys, "milnor", "--example", "quartic-e6", "--order", "2")
    m = rep["analyses"]["milnor"]["2"]
    assert code == 0
    assert m["classification"] == "stable"
    assert m["series"] == {"polynomial": [1, 3, 3], "tail_value": 2, "tail_from": 3}
    assert m["tjurina_sum"] == 2 and m["artinian"] is False


def test_hessian_gn_quintic(capsys):
    code, rep = run_json(capsys, "hessian", "--example", "gn-quintic", "--k", "2", "--l", "1")
    h = rep["analyses"]["hessians"]["2,1"]
    assert code == 0
    assert h["shape"] == [5, 6] and h["generic_rank"]["rank"] == 5


def test_hessian_square_determinant(capsys):
    code, rep = run_json(capsys, "hessian", "--poly", "x0*x1*x2", "--nvars", "3")
    h = rep["analyses"]["hessians"]["1,1"]
    assert h["determinant"] == "2*x0*x1*x2" and h["determinant_zero"] is False


def test_byte_identical_json(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["report", "--example", "ikeda", "--seed", "7", "--format", "json", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["seed"] == 7


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("APOLAR_SEED", "42")
    _, rep = run_json(capsys, "lefschetz", "--example", "triangle")
    assert rep["seed"] == 42 and rep["analyses"]["lefschetz"]["seed"] == 42
    monkeypatch.setenv("APOLAR_SEED", "abc")
    assert run(capsys, "lefschetz", "--example", "triangle")[0] == 2


def test_seed_changes_nothing_exact(capsys):
    _, a = run_json(capsys, "hilbert", "--example", "caporali", "--seed", "1")
    _, b = run_json(capsys, "hilbert", "--example", "caporali", "--seed", "2")
    assert a["analyses"] == b["analyses"]


@pytest.mark.parametrize("args", [
    ["hilbert", "--example", "nope"],
    ["hilbert", "--poly", "x0x1", "--nvars", "3"],
    ["hilbert", "--poly", "x0^2+x1", "--nvars", "3"],
    ["hilbert", "--poly", "x5", "--nvars", "3"],
    ["hilbert", "--poly", "x0^2"],
    ["hilbert"],
    ["milnor", "--example", "fermat:2:4", "--order", "4"],
    ["hessian", "--example", "triangle", "--k", "2", "--l", "2"],
    ["report", "--poly", "x0^3+x1^3+x2^3", "--nvars", "3", "--verify-paper"],
])
def test_usage_errors_exit_2(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2 and err.startswith("error:")


def test_cone_input_reported(capsys):
    code, rep = run_json(capsys, "report", "--poly", "x0^3+x1^3", "--nvars", "3")
    assert code == 0
    assert rep["analyses"]["hilbert"]["cone"] is True
    assert rep["analyses"]["skipped"] == ["hessians", "lefschetz"]
    code, rep = run_json(capsys, "hessian", "--poly", "x0^3+x1^3", "--nvars", "3")
    assert code == 0 and rep["analyses"]["skipped"] == ["hessian"]


@pytest.mark.parametrize("name", ["fermat:2:4", "caporali", "caporali1", "caporali2", "quartic-e6",
                                  "quartic-3a2", "quartic-2a3", "quartic-4a1", "lines-3x", "lines-4",
                                  "ikeda", "triangle"])
def test_verify_paper_passes(capsys, name):
    code, rep = run_json(capsys, "report", "--example", name, "--verify-paper")
    assert code == 0 and rep["verify_paper"] == []


def test_verify_paper_reports_five_variable_mismatch(capsys):
    # the recorded hess^2 = 0 cannot hold on a basis of A_2; see the Hessian tests
    code, rep = run_json(capsys, "report", "--example", "gn-quintic", "--verify-paper")
    assert code == 1
    assert rep["verify_paper"] == ["gn-quintic: hess2_zero expected True, got False"]


def test_lefschetz_jacobian(capsys):
    code, rep = run_json(capsys, "lefschetz", "--example", "caporali", "--quotient", "jacobian")
    lf = rep["analyses"]["lefschetz"]
    assert code == 0 and lf["slp"] is True and lf["hilbert"] == [1, 3, 6, 7, 6, 3, 1]
    _, rep = run_json(capsys, "lefschetz", "--example", "triangle", "--quotient", "jacobian")
    assert "skipped" in rep["analyses"]["lefschetz"]


def test_betti_jacobian_truncated(capsys):
    code, rep = run_json(capsys, "betti", "--example", "triangle", "--quotient", "jacobian", "--cap", "5")
    b = rep["analyses"]["betti"]
    assert code == 0 and b["truncated"] and b["alternating_sum_ok"]


def test_text_output_and_timing(capsys):
    code, out, _ = run(capsys, "report", "--example", "fermat:2:4", "--timing")
    assert code == 0
    assert "Hilb(A(f)) = (1, 3, 3, 3, 1)" in out
    assert "H(M^2(f); t) = 1+3t+3t^2+t^3" in out
    assert "elapsed:" in out
    _, js = run_json(capsys, "report", "--example", "fermat:2:4")
    assert "elapsed" not in json.dumps(js)


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures", "--format", "json")
    names = [r["name"] for r in json.loads(out)]
    assert code == 0 and "gn-quintic" in names and names[0] == "fermat:2:4"


def test_hess_question(capsys):
    code, rep = run_json(capsys, "hess-question", "--samples", "4", "--seed", "3")
    assert code == 0
    assert len(rep["samples"]) == 4
    assert all(s["multiplicity_at_p"] >= 2 for s in rep["samples"])
    again = run_json(capsys, "hess-question", "--samples", "4", "--seed", "3")[1]
    assert again == rep


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "hyperjac", "hilbert", "--example", "triangle"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "(1, 3, 3, 1)" in res.stdout
