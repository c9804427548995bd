"""Overall strategy: agenda-driven local search, then best-first from scratch."""

from __future__ import annotations

import time

from ..heuristic import INF, Evaluator
from ..task import Plan, Task, validate_plan
from .agenda import compute_goal_agenda
from .common import graph_for
from .config import (
    EHC_FAILED,
    EXHAUSTED,
    SOLVED,
    UNSOLVABLE,
    Budget,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)
from .ehc import enforced_hill_climbing
from .gbfs import greedy_best_first
from .hc import hsp1_hill_climbing


def _merge(total: SearchStats, part: SearchStats) -> None:
    total.evaluations += part.evaluations
    total.expansions += part.expansions
    total.max_bfs_depth = max(total.max_bfs_depth, part.max_bfs_depth)
    total.ehc_iterations += part.ehc_iterations
    total.restarts += part.restarts
    total.max_rpg_layers = max(total.max_rpg_layers, part.max_rpg_layers)
    total.anchor_h.extend(part.anchor_h)


def solve(task: Task, config: SearchConfig = SearchConfig()) -> SearchOutcome:
    t0 = time.perf_counter()
    graph = graph_for(task)
    evaluator = Evaluator(graph, config.heuristic)
    budget = Budget(config, evaluator)
    stats = SearchStats()
    log: list = []

    def finish(status, steps=None, reason="", phase=""):
        stats.elapsed = time.perf_counter() - t0
        plan = None
        final = None
        if status == SOLVED:
            plan = Plan(tuple(steps))
            report = validate_plan(task, plan)
            if not report.valid:
                raise AssertionError(f"search produced an invalid plan (step {report.failing_step})")
            final = report.final_state
        return SearchOutcome(status, plan, stats, reason, final, log, phase)

    if task.goal_set <= task.initial:
        return finish(SOLVED, [], phase="initial")
    if task.unsolvable:
        return finish(UNSOLVABLE, reason="goal unreachable at grounding time")

    if config.strategy == "gbfs":
        out = greedy_best_first(task, config=config, evaluator=evaluator, budget=budget)
        _merge(stats, out.stats)
        log.extend(out.log)
        return finish(out.status, out.plan.steps if out.plan else None, out.fail_reason, "gbfs")

    local = enforced_hill_climbing if config.strategy == "ehc" else hsp1_hill_climbing
    if config.agenda:
        agenda = compute_goal_agenda(task)
        if agenda.unsolvable:
            return finish(UNSOLVABLE, reason="goal without achiever")
        targets = list(agenda.cumulative())
    else:
        targets = [tuple(task.goals)]

    state = task.initial
    steps: list[int] = []
    status, reason = SOLVED, ""
    for goals in targets:
        out = local(task, goals, config, start=state, evaluator=evaluator, budget=budget)
        _merge(stats, out.stats)
        log.extend(out.log)
        if not out.solved:
            status, reason = out.status, out.fail_reason
            break
        steps.extend(out.plan.steps)
        state = out.final_state
    if status == SOLVED:
        return finish(SOLVED, steps, phase=config.strategy)
    if status == EHC_FAILED and state is task.initial and reason.startswith("dead end"):
        return finish(UNSOLVABLE, reason=reason)
    if status == EXHAUSTED or not config.fallback:
        return finish(status, reason=reason)

    plain = config.with_(helpful=False, agd=False, agenda=False, strategy="gbfs")
    out = greedy_best_first(task, config=plain, evaluator=evaluator, budget=budget)
    _merge(stats, out.stats)
    log.extend(out.log)
    return finish(
        out.status, out.plan.steps if out.plan else None, out.fail_reason, "gbfs-fallback"
    )


def initial_estimate(task: Task, heuristic: str = "ff"):
    h = Evaluator(graph_for(task), heuristic)(task.initial, tuple(task.goals)).h
    return INF if h == INF else h
