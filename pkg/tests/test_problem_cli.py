import json
import subprocess
import sys
from pathlib import Path

import pytest

from mfcy.cli import main
from mfcy.problem import ProblemError, ProblemParseError, dump_problem, emit, load_problem, run

PROBLEMS = Path(__file__).resolve().parents[1] / "demos" / "problems"


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_minimal_problem(capsys):
    code, out, _ = cli(capsys, "run", PROBLEMS / "kl_z2.json")
    assert code == 0
    (record,) = json.loads(out)
    assert record["value"] == "-1"
    assert "elapsed" not in record["diagnostics"]


def test_timing_is_opt_in(capsys):
    _, out, _ = cli(capsys, "run", "--timing", PROBLEMS / "kl_z2.json")
    assert "elapsed" in json.loads(out)[0]["diagnostics"]


def test_invalid_factorization_exit_1(capsys):
    code, out, err = cli(capsys, "run", PROBLEMS / "invalid_mf.json")
    assert code == 1 and not out
    assert "D^2 = f" in err


def test_parse_error_reports_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vars": ["z"],\n "superpotential": "z^^2"}')
    code, _, err = cli(capsys, "run", bad)
    assert code == 2
    assert "line 2" in err and "column" in err
    bad.write_text('{"vars": ["z"]\n "x": 1}')
    assert cli(capsys, "run", bad)[0] == 2


def test_budget_exit_3(capsys):
    code, out, err = cli(capsys, "theta", "--budget", 1, PROBLEMS / "koszul_theta.json")
    assert code == 3 and not out
    assert "budget" in err


def test_theta_command(capsys):
    code, out, _ = cli(capsys, "theta", PROBLEMS / "koszul_theta.json")
    rec = json.loads(out)
    assert code == 0 and rec["value"] == "5/9"
    assert {"value", "term_count", "elapsed"} <= set(rec)


def test_emit_shapes():
    assert emit([]) == "[]"
    assert json.loads(emit([{"id": "a", "value": "1"}])) == [{"id": "a", "value": "1"}]
    assert emit([{"id": "a", "value": "1"}], "text").split("\t")[-1] == "1"


def test_z3_records():
    prob = load_problem((PROBLEMS / "z3.json").read_text())
    recs = {r["id"]: r for r in run(prob)}
    assert recs["kl"]["value"] == "1"
    gram = [r for r in recs.values() if r["command"] == "gram"]
    assert gram and isinstance(gram[0]["value"], list)
    assert all(isinstance(row, list) for row in gram[0]["value"])


@pytest.mark.parametrize("name", ["kl_z2.json", "z3.json", "koszul_theta.json"])
def test_dump_load_round_trip(name):
    prob = load_problem((PROBLEMS / name).read_text())
    again = load_problem(json.dumps(dump_problem(prob)))
    assert run(again) == run(prob)


def test_loader_errors():
    with pytest.raises(ProblemParseError):
        load_problem("{")
    with pytest.raises(ProblemError):
        load_problem(json.dumps({"vars": ["z"], "superpotential": "z^2", "tasks": [{"command": "nope"}]}))


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "mfcy", "run", str(PROBLEMS / "z3.json")]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout


@pytest.mark.parametrize("command,name", [("run", "kl_z2"), ("run", "z3"), ("run", "koszul_theta"),
                                          ("residue", "residue")])
def test_golden_output(capsys, command, name):
    # frozen record schema: regenerate with `mfcy <command> demos/problems/<name>.json`
    code, out, _ = cli(capsys, command, PROBLEMS / f"{name}.json")
    expected = (Path(__file__).parent / "golden" / f"{name}.out.json").read_text()
    assert code == 0 and out == expected


@pytest.mark.parametrize("name", ["kl_z2", "z3", "koszul_theta"])
def test_emit_is_a_fixed_point(name):
    prob = load_problem((PROBLEMS / f"{name}.json").read_text())
    once = json.dumps(dump_problem(prob))
    assert json.dumps(dump_problem(load_problem(once))) == once
