"""Randomised hill-climbing with restarts, after HSP1."""

from __future__ import annotations

import random

from ..heuristic import INF, Evaluator
from ..task import Plan, Task, apply
from .common import graph_for, successor_generator
from .config import (
    EXHAUSTED,
    SOLVED,
    Budget,
    Exhausted,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)
from .ehc import added_goal_deletion_check


def hsp1_hill_climbing(
    task: Task,
    goals=None,
    config: SearchConfig = SearchConfig(strategy="hc"),
    *,
    start=None,
    evaluator: Evaluator | None = None,
    budget: Budget | None = None,
) -> SearchOutcome:
    """Move to a uniformly random best successor; restart from ``start`` after too
    many steps without improvement.

    Heuristic values are cached for the whole run, so a restart never
    re-evaluates a state.  Cycle memory covers one trial.
    """
    goals = tuple(task.goals if goals is None else goals)
    graph = graph_for(task)
    evaluator = evaluator or Evaluator(graph, config.heuristic)
    budget = budget or Budget(config, evaluator)
    successors = successor_generator(task)
    actions = task.actions
    rng = random.Random(config.seed)
    need_plan = config.helpful or config.agd
    stats = SearchStats()
    log: list = []
    base_evals = evaluator.evaluations
    root = task.initial if start is None else start
    cache: dict = {}
    plan: list[int] = []
    state = root

    def evaluate(s):
        ev = cache.get(s)
        if ev is None:
            budget.check()
            ev = evaluator(s, goals, need_plan)
            cache[s] = ev
        return ev

    def finish(status, reason=""):
        stats.evaluations = evaluator.evaluations - base_evals
        stats.max_rpg_layers = evaluator.max_layers
        return SearchOutcome(
            status, Plan(tuple(plan)) if status == SOLVED else None, stats, reason, state, log
        )

    try:
        ev0 = evaluate(root)
        if ev0.h == INF:
            return finish(EXHAUSTED, "goals relaxed-unreachable from the start state")
        threshold = 2 * ev0.h
        while True:
            state, ev, plan = root, ev0, []
            trail = {root}
            best = ev.h
            stale = 0
            while ev.h != 0:
                budget.check()
                stats.expansions += 1
                ids = evaluator.helpful(state, ev) if config.helpful else successors(state)
                best_h = INF
                choices = []
                for a in ids:
                    s2 = apply(state, actions[a])
                    if s2 in trail:
                        continue
                    ev2 = evaluate(s2)
                    if ev2.h == INF:
                        continue
                    if config.agd and added_goal_deletion_check(
                        graph, state, actions[a], s2, ev2, goals
                    ):
                        continue
                    if ev2.h < best_h:
                        best_h = ev2.h
                        choices = [(a, s2, ev2)]
                    elif ev2.h == best_h:
                        choices.append((a, s2, ev2))
                if not choices:
                    break
                a, state, ev = choices[rng.randrange(len(choices))]
                if config.trace:
                    log.append(("expand", a))
                plan.append(a)
                trail.add(state)
                if ev.h < best:
                    best = ev.h
                    stale = 0
                else:
                    stale += 1
                    if stale > threshold:
                        break
            if ev.h == 0:
                return finish(SOLVED)
            if stats.restarts >= config.max_restarts:
                return finish(EXHAUSTED, "restart limit")
            stats.restarts += 1
    except Exhausted as exc:
        return finish(EXHAUSTED, str(exc))
