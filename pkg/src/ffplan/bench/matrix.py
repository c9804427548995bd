"""The configuration matrix: every suite instance under every switch setting."""

from __future__ import annotations

import csv
import io
import time
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from statistics import mean

from ..pddl import ground_texts
from ..search import ALL8, SearchConfig, solve
from .stats import paired_sign_test
from .suite import SuiteSpec

CSV_HEADER = (
    "domain",
    "instance",
    "config",
    "seed",
    "solved",
    "plan_length",
    "evaluations",
    "expansions",
    "time_ms",
    "fail_reason",
)

HC_TRIALS = 5


@dataclass(frozen=True)
class Limits:
    max_seconds: float | None = 10.0
    max_evaluations: int | None = 100_000
    # wall-clock times make output machine dependent; off gives byte-stable CSVs
    timing: bool = True


@dataclass(frozen=True)
class RunRecord:
    domain: str
    instance: str
    config: str
    seed: int
    solved: bool
    plan_length: float
    evaluations: float
    expansions: float
    time_ms: float
    fail_reason: str = ""

    def row(self) -> list[str]:
        return [
            self.domain,
            self.instance,
            self.config,
            str(self.seed),
            "1" if self.solved else "0",
            _num(self.plan_length),
            _num(self.evaluations),
            _num(self.expansions),
            _num(self.time_ms),
            self.fail_reason,
        ]


def _num(x: float) -> str:
    if x == int(x):
        return str(int(x))
    return f"{x:.1f}"


def parse_configs(text: str) -> list[str]:
    if text == "all8":
        return list(ALL8)
    configs = [c.strip() for c in text.split(",") if c.strip()]
    for c in configs:
        SearchConfig.from_letters(c)
    if not configs:
        raise ValueError("no configurations given")
    return configs


def _single(task, letters: str, seed: int, limits: Limits) -> tuple:
    config = SearchConfig.from_letters(
        letters,
        seed=seed,
        max_seconds=limits.max_seconds,
        max_evaluations=limits.max_evaluations,
    )
    t0 = time.perf_counter()
    out = solve(task, config)
    elapsed = (time.perf_counter() - t0) * 1000.0
    solved = out.solved
    if not solved and limits.max_seconds is not None:
        elapsed = limits.max_seconds * 1000.0
    elif not limits.timing:
        elapsed = 0.0
    length = len(out.plan) if solved else -1
    return solved, length, out.stats.evaluations, out.stats.expansions, elapsed, out.status


def run_matrix(
    suite: SuiteSpec,
    configs: list[str] | tuple[str, ...] = ALL8,
    limits: Limits = Limits(),
    base_seed: int = 0,
    aggregate: bool = True,
) -> list[RunRecord]:
    """Hill-climbing configurations run ``HC_TRIALS`` seeds (base_seed+0..4).

    Aggregated trials report mean length over solved trials, mean counts and
    times (failures charged the time limit), and majority solved.
    """
    records = []
    for entry in suite:
        task, _ = ground_texts(*entry.texts())
        for letters in configs:
            hc = letters[1] != "E"
            seeds = [base_seed + i for i in range(HC_TRIALS)] if hc else [base_seed]
            trials = [_single(task, letters, s, limits) for s in seeds]
            if aggregate:
                records.append(_aggregate(entry, letters, base_seed, trials))
            else:
                for s, t in zip(seeds, trials):
                    records.append(_aggregate(entry, letters, s, [t]))
    return records


def _aggregate(entry, letters, seed, trials) -> RunRecord:
    solved_trials = [t for t in trials if t[0]]
    solved = 2 * len(solved_trials) > len(trials)
    if solved:
        length = mean(t[1] for t in solved_trials)
        reason = ""
    else:
        length = -1
        failures = [t[5] for t in trials if not t[0]]
        reason = max(sorted(set(failures)), key=failures.count)
    return RunRecord(
        domain=entry.domain,
        instance=entry.name,
        config=letters,
        seed=seed,
        solved=solved,
        plan_length=length,
        evaluations=mean(t[2] for t in trials),
        expansions=mean(t[3] for t in trials),
        time_ms=round(mean(t[4] for t in trials), 1),
        fail_reason=reason,
    )


def records_csv(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def sign_summary(records: list[RunRecord], metric: str = "time_ms") -> list[tuple]:
    """Per domain and configuration pair: ``(domain, a, b, n_diff, a_wins, b_wins, p)``.

    Lower metric values win; unsolved runs count as the worst value.
    """
    by = defaultdict(dict)
    for r in records:
        value = getattr(r, metric) if r.solved else float("inf")
        by[(r.domain, r.config)][r.instance] = value
    domains = sorted({r.domain for r in records})
    configs = list(dict.fromkeys(r.config for r in records))
    rows = []
    for d in domains:
        for a, b in combinations(configs, 2):
            va, vb = by.get((d, a), {}), by.get((d, b), {})
            shared = sorted(va.keys() & vb.keys())
            n, wa, wb, p = paired_sign_test([va[i] for i in shared], [vb[i] for i in shared])
            rows.append((d, a, b, n, wa, wb, p))
    return rows


def sign_summary_csv(rows: list[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("domain", "config_a", "config_b", "n_diff", "a_better", "b_better", "p"))
    for d, a, b, n, wa, wb, p in rows:
        w.writerow((d, a, b, n, wa, wb, f"{p:.6g}"))
    return buf.getvalue()
