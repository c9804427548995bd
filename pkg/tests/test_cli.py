import csv
import io
import subprocess
import sys

import pytest

from ffplan.bench import gen_blocksworld, gen_gripper
from ffplan.cli import main


def _write(tmp_path, texts, stem="t"):
    d, p = tmp_path / f"{stem}-domain.pddl", tmp_path / f"{stem}-problem.pddl"
    d.write_text(texts[0])
    p.write_text(texts[1])
    return str(d), str(p)


TRAP_DOMAIN = """
(define (domain trap)
  (:predicates (a) (b) (pa) (pb))
  (:action opa1 :parameters () :precondition (and) :effect (and (a) (not (b))))
  (:action opa2 :parameters () :precondition (pa) :effect (a))
  (:action oppa :parameters () :precondition (and) :effect (pa))
  (:action opb1 :parameters () :precondition (and) :effect (and (b) (not (a))))
  (:action opb2 :parameters () :precondition (pb) :effect (b))
  (:action oppb :parameters () :precondition (and) :effect (pb)))
"""
TRAP_PROBLEM = "(define (problem trap-1) (:domain trap) (:init (b)) (:goal (and (a) (b))))"


def test_plan_gripper(tmp_path, capsys):
    d, p = _write(tmp_path, gen_gripper(2))
    assert main(["plan", "-o", d, "-f", p, "--no-timing"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert lines[-1] == "solved=1 length=5 evals=8 expansions=5 time_ms=0"
    assert all(line.startswith("(") for line in lines[:5])


def test_plan_file_round_trip(tmp_path, capsys):
    d, p = _write(tmp_path, gen_blocksworld(5, 4))
    out = tmp_path / "plan.txt"
    assert main(["plan", "-o", d, "-f", p, "--plan-out", str(out)]) == 0
    assert capsys.readouterr().out.startswith("solved=1 ")
    assert main(["validate", "-o", d, "-f", p, str(out)]) == 0
    steps = out.read_text().splitlines()
    out.write_text("; comment\n" + "\n".join(steps[:-1]).upper() + "\n")
    assert main(["validate", "-o", d, "-f", p, str(out)]) == 2
    assert "goals not satisfied" in capsys.readouterr().out


def test_validate_rejects_bad_plans(tmp_path, capsys):
    d, p = _write(tmp_path, gen_gripper(1))
    bad = tmp_path / "bad.txt"
    bad.write_text("(drop ball1 roomb left)\n")
    assert main(["validate", "-o", d, "-f", p, str(bad)]) == 2
    assert "step 1" in capsys.readouterr().out
    bad.write_text("(fly ball1)\n")
    assert main(["validate", "-o", d, "-f", p, str(bad)]) == 3


def test_plan_is_byte_identical_across_runs(tmp_path):
    d, p = _write(tmp_path, gen_blocksworld(6, 1))
    outs = []
    for i in range(2):
        f = tmp_path / f"plan{i}.txt"
        assert main(["plan", "-o", d, "-f", p, "--plan-out", str(f), "--no-timing"]) == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]


def test_unsupported_construct_is_input_error(tmp_path, capsys):
    domain = ("(define (domain d) (:predicates (p) (q)) (:action a :parameters () "
              ":precondition (or (p) (q)) :effect (p)))")
    d, p = _write(tmp_path, (domain, "(define (problem x) (:domain d) (:init) (:goal (and (p))))"))
    assert main(["plan", "-o", d, "-f", p]) == 3
    assert "unsupported construct 'or'" in capsys.readouterr().err


def test_missing_file_is_input_error(tmp_path):
    assert main(["plan", "-o", str(tmp_path / "nope"), "-f", str(tmp_path / "nope")]) == 3


def test_bad_flag_is_input_error(tmp_path):
    d, p = _write(tmp_path, gen_gripper(1))
    with pytest.raises(SystemExit) as exc:
        main(["plan", "-o", d, "-f", p, "--helpful", "maybe"])
    assert exc.value.code == 3


def test_helpful_trap_without_fallback_fails(tmp_path, capsys):
    d, p = _write(tmp_path, (TRAP_DOMAIN, TRAP_PROBLEM))
    code = main(["plan", "-o", d, "-f", p, "--search", "ehc", "--helpful", "on",
                 "--fallback", "off", "--agenda", "off"])
    assert code == 2
    captured = capsys.readouterr()
    assert "ehc_failed" in captured.err
    assert captured.out.startswith("solved=0 length=0")


def test_helpful_trap_with_defaults(tmp_path, capsys):
    d, p = _write(tmp_path, (TRAP_DOMAIN, TRAP_PROBLEM))
    assert main(["plan", "-o", d, "-f", p]) == 0
    assert capsys.readouterr().out.splitlines()[:2] == ["(oppa)", "(opa2)"]


def test_unsolvable_exit_code(tmp_path):
    problem = "(define (problem x) (:domain trap) (:init) (:goal (and (a) (b) (pa))))"
    domain = TRAP_DOMAIN.replace(":effect (pa)", ":effect (and)")
    d, p = _write(tmp_path, (domain, problem))
    assert main(["plan", "-o", d, "-f", p]) == 1


def test_stats_csv_format(tmp_path, capsys):
    d, p = _write(tmp_path, gen_gripper(1))
    plan_out = tmp_path / "p.txt"
    assert main(["plan", "-o", d, "-f", p, "--stats-format", "csv", "--no-timing",
                 "--plan-out", str(plan_out), "--search", "gbfs", "--heuristic", "add"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows == [{"solved": "1", "length": "3", "evals": rows[0]["evals"],
                     "expansions": rows[0]["expansions"], "time_ms": "0"}]


def _suite(tmp_path):
    suite = tmp_path / "suite.txt"
    suite.write_text("gripper n=2\ngripper n=3\nblocksworld name=bw-para\n")
    return str(suite)


def test_bench_all8(tmp_path, capsys):
    out = tmp_path / "m.csv"
    assert main(["bench", "--suite", _suite(tmp_path), "--configs", "all8",
                 "--out", str(out), "--no-timing"]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 24
    assert capsys.readouterr().out == ""


def test_bench_config_subset_and_sign_test(tmp_path, capsys):
    out = tmp_path / "m.csv"
    assert main(["bench", "--suite", _suite(tmp_path), "--configs", "HEF,---", "--out", str(out),
                 "--sign-test", "--sign-metric", "plan_length", "--no-timing"]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert {r["config"] for r in rows} == {"HEF", "---"}
    summary = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    by_domain = {r["domain"]: r for r in summary}
    g = by_domain["gripper"]
    assert (g["n_diff"], g["a_better"], g["b_better"], g["p"]) == ("2", "2", "0", "0.5")


def test_bench_csv_is_byte_identical(tmp_path):
    suite = _suite(tmp_path)
    outs = []
    for i in range(2):
        f = tmp_path / f"m{i}.csv"
        main(["bench", "--suite", suite, "--out", str(f), "--no-timing", "--seed", "3"])
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]


def test_bench_bad_inputs(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("chess n=2\n")
    assert main(["bench", "--suite", str(bad), "--out", str(tmp_path / "x.csv")]) == 3
    assert main(["bench", "--suite", _suite(tmp_path), "--configs", "XYZ",
                 "--out", str(tmp_path / "x.csv")]) == 3


def test_module_entry_point(tmp_path):
    d, p = _write(tmp_path, gen_gripper(1))
    run = subprocess.run([sys.executable, "-m", "ffplan", "plan", "-o", d, "-f", p, "--no-timing"],
                         capture_output=True, text=True)
    assert run.returncode == 0
    assert run.stdout.splitlines()[-1].startswith("solved=1 length=3")
