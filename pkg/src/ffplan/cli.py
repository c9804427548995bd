"""Command line: ``ffplan plan``, ``ffplan bench`` and ``ffplan validate``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import (
    Limits,
    SuiteError,
    parse_configs,
    parse_suite,
    records_csv,
    run_matrix,
    sign_summary,
    sign_summary_csv,
)
from .pddl import PDDLError, ground_texts
from .planfile import format_plan, parse_plan
from .search import SOLVED, UNSOLVABLE, SearchConfig, solve
from .task import PlanError, validate_plan

EXIT_SOLVED = 0
EXIT_UNSOLVABLE = 1
EXIT_FAILED = 2
EXIT_INPUT = 3


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return value == "on"


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not search failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ffplan", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    plan = sub.add_parser("plan", help="solve a PDDL task")
    plan.add_argument("-o", dest="domain", required=True, help="domain file")
    plan.add_argument("-f", dest="problem", required=True, help="problem file")
    plan.add_argument("--heuristic", choices=("ff", "add"), default="ff")
    plan.add_argument("--search", choices=("ehc", "hc", "gbfs"), default="ehc")
    for flag in ("helpful", "agd", "agenda", "fallback"):
        plan.add_argument(f"--{flag}", type=_on_off, default=True, metavar="on|off")
    plan.add_argument("--seed", type=int, default=0)
    plan.add_argument("--max-seconds", type=float, default=None)
    plan.add_argument("--max-evals", type=int, default=None)
    plan.add_argument("--plan-out", default=None, help="plan file (default: stdout)")
    plan.add_argument("--stats-format", choices=("line", "csv"), default="line")
    plan.add_argument("--no-timing", action="store_true", help="report time_ms=0")

    bench = sub.add_parser("bench", help="run the configuration matrix")
    bench.add_argument("--suite", required=True)
    bench.add_argument("--configs", default="all8", help="all8 or a list like HEF,---")
    bench.add_argument("--out", required=True, help="CSV output file")
    bench.add_argument("--sign-test", action="store_true", help="print pairwise sign tests")
    bench.add_argument("--sign-metric", default="time_ms",
                       choices=("time_ms", "evaluations", "plan_length", "expansions"))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--max-seconds", type=float, default=10.0)
    bench.add_argument("--max-evals", type=int, default=100_000)
    bench.add_argument("--no-timing", action="store_true")

    val = sub.add_parser("validate", help="check a plan file against a task")
    val.add_argument("-o", dest="domain", required=True)
    val.add_argument("-f", dest="problem", required=True)
    val.add_argument("plan")
    return p


def _stats(fmt: str, solved: bool, length: int, outcome, timing: bool) -> str:
    ms = round(outcome.stats.elapsed * 1000) if timing else 0
    values = (int(solved), length, outcome.stats.evaluations, outcome.stats.expansions, ms)
    if fmt == "csv":
        return "solved,length,evals,expansions,time_ms\n" + ",".join(map(str, values))
    return "solved={} length={} evals={} expansions={} time_ms={}".format(*values)


def plan_command(args) -> int:
    try:
        task, _ = ground_texts(Path(args.domain).read_text(), Path(args.problem).read_text())
    except (OSError, PDDLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    config = SearchConfig(
        heuristic=args.heuristic,
        strategy=args.search,
        helpful=args.helpful,
        agd=args.agd,
        agenda=args.agenda,
        fallback=args.fallback,
        seed=args.seed,
        max_seconds=args.max_seconds,
        max_evaluations=args.max_evals,
    )
    outcome = solve(task, config)
    solved = outcome.status == SOLVED
    if solved:
        text = format_plan(task, outcome.plan)
        if not validate_plan(task, parse_plan(task, text)).valid:
            print("error: emitted plan failed validation", file=sys.stderr)
            return EXIT_FAILED
        if args.plan_out:
            Path(args.plan_out).write_bytes(text.encode())
        else:
            sys.stdout.write(text)
    length = len(outcome.plan) if solved else 0
    print(_stats(args.stats_format, solved, length, outcome, not args.no_timing))
    if solved:
        return EXIT_SOLVED
    print(f"no plan: {outcome.status} ({outcome.fail_reason})", file=sys.stderr)
    if outcome.status == UNSOLVABLE:
        return EXIT_UNSOLVABLE
    return EXIT_FAILED


def bench_command(args) -> int:
    try:
        suite = parse_suite(Path(args.suite).read_text())
        configs = parse_configs(args.configs)
    except (OSError, SuiteError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    limits = Limits(args.max_seconds, args.max_evals, timing=not args.no_timing)
    records = run_matrix(suite, configs, limits, base_seed=args.seed)
    Path(args.out).write_bytes(records_csv(records).encode())
    if args.sign_test:
        sys.stdout.write(sign_summary_csv(sign_summary(records, args.sign_metric)))
    return EXIT_SOLVED


def validate_command(args) -> int:
    try:
        task, _ = ground_texts(Path(args.domain).read_text(), Path(args.problem).read_text())
        plan = parse_plan(task, Path(args.plan).read_text())
    except (OSError, PDDLError, PlanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = validate_plan(task, plan)
    if report.valid:
        print(f"valid plan, {len(plan)} steps")
        return EXIT_SOLVED
    if report.failing_step is not None:
        print(f"invalid: step {report.failing_step + 1} is not applicable")
    else:
        print("invalid: goals not satisfied")
    return EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handler = {"plan": plan_command, "bench": bench_command, "validate": validate_command}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
