import json
import subprocess
import sys

from structcodesign import bundled_instance_path
from structcodesign.cli import run

EX1 = str(bundled_instance_path("example1"))
EX2 = str(bundled_instance_path("example2"))


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_solve_example1(capsys):
    assert run(["solve", EX1]) == 0
    out = _json_out(capsys)
    assert out == {"inputs": [1], "outputs": [1], "feedback": [[1, 1]], "cost": 30,
                   "branch": "SingleTriple", "verified": True}


def test_solve_roundtrips_into_check_sfm(capsys, tmp_path):
    assert run(["solve", EX2]) == 0
    sel_file = tmp_path / "sel.json"
    sel_file.write_text(capsys.readouterr().out)
    assert run(["check-sfm", EX2, "--selection", str(sel_file)]) == 0
    out = _json_out(capsys)
    assert out["no_sfms"] is True and out["failed_condition"] is None
    assert run(["check-ctrb", EX2, "--selection", str(sel_file)]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert run(["check-obsv", EX2, "--selection", str(sel_file)]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_check_sfm_reports_failure(capsys, tmp_path):
    sel = tmp_path / "sel.json"
    sel.write_text(json.dumps({"inputs": [1], "outputs": [1], "feedback": [[1, 1]]}))
    assert run(["check-sfm", EX2, "--selection", str(sel)]) == 0
    out = _json_out(capsys)
    assert out["no_sfms"] is False and out["failed_condition"] == "b"


def test_solve_io_and_cc(capsys):
    assert run(["solve-io", EX1]) == 0
    out = _json_out(capsys)
    assert out["inputs"] == [1] and out["cost"] == 10 and out["controllable"]
    assert run(["solve-cc", EX2]) == 0
    out = _json_out(capsys)
    assert out["cost"] == 140 and out["verified"]


def test_oracle(capsys):
    assert run(["oracle", EX2]) == 0
    out = _json_out(capsys)
    assert out["cost"] == 186 and out["branch"] == "Exhaustive"
    assert run(["oracle", EX2, "--max-pairs", "2"]) == 4


def test_check_irreducible_pattern_only(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"n": 2, "A": [[1, 2]]}))
    assert run(["check-irreducible", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "false"
    assert run(["check-irreducible", EX1]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_infeasible_and_reducible_exit_codes(capsys, tmp_path):
    data = json.loads(open(EX1).read())
    data["cost_f"] = [[None] * 3 for _ in range(4)]
    f = tmp_path / "blocked.json"
    f.write_text(json.dumps(data))
    assert run(["solve", str(f)]) == 2
    assert "no feasible information pattern" in capsys.readouterr().err

    data = json.loads(open(EX2).read())
    data["A"] = [e for e in data["A"] if e != [2, 1]]
    f = tmp_path / "reducible.json"
    f.write_text(json.dumps(data))
    assert run(["solve", str(f)]) == 3
    assert "not irreducible" in capsys.readouterr().err


def test_usage_and_input_errors(capsys, tmp_path):
    assert run([]) == 64
    assert run(["solve"]) == 64
    assert run(["frobnicate"]) == 64
    assert run(["solve", str(tmp_path / "missing.json")]) == 65
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", str(bad)]) == 65
    neg = json.loads(open(EX1).read())
    neg["cost_u"][0] = -1
    bad.write_text(json.dumps(neg))
    assert run(["solve", str(bad)]) == 65
    assert run(["gen", "--n", "0", "--p", "1", "--m", "1"]) == 64
    capsys.readouterr()


def test_gen_then_solve(capsys, tmp_path):
    out = tmp_path / "inst.json"
    assert run(["gen", "--n", "5", "--p", "2", "--m", "2", "--seed", "3", "--out", str(out)]) == 0
    assert run(["check-irreducible", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert run(["gen", "--n", "3", "--p", "1", "--m", "1", "--seed", "3"]) == 0
    assert _json_out(capsys)["n"] == 3


def test_export_dot(capsys, tmp_path):
    assert run(["solve", EX1]) == 0
    sel = tmp_path / "sel.json"
    sel.write_text(capsys.readouterr().out)
    dot = tmp_path / "g.dot"
    assert run(["export-dot", EX1, "--selection", str(sel), "--out", str(dot)]) == 0
    text = dot.read_text()
    assert text.startswith("digraph")
    assert "penwidth=3" in text and "dashed" in text


def test_bench_csv(capsys):
    assert run(["bench", "--sizes", "10,20", "--repeats", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "size,median_ms"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["10", "20"]
    assert run(["bench", "--sizes", "ten"]) == 64


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "structcodesign", "solve", EX1],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cost"] == 30
