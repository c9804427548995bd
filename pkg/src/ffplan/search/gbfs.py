"""Greedy best-first search; complete on finite state spaces."""

from __future__ import annotations

import heapq
import itertools

from ..heuristic import INF, Evaluator
from ..task import Plan, Task, apply
from .common import graph_for, successor_generator, unwind
from .config import (
    EXHAUSTED,
    SOLVED,
    UNSOLVABLE,
    Budget,
    Exhausted,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)


def greedy_best_first(
    task: Task,
    goals=None,
    config: SearchConfig = SearchConfig(strategy="gbfs"),
    *,
    start=None,
    evaluator: Evaluator | None = None,
    budget: Budget | None = None,
) -> SearchOutcome:
    """Open list by h, FIFO among ties; never pruned by helpful actions or goal deletion."""
    goals = tuple(task.goals if goals is None else goals)
    goal_set = frozenset(goals)
    evaluator = evaluator or Evaluator(graph_for(task), config.heuristic)
    budget = budget or Budget(config, evaluator)
    successors = successor_generator(task)
    actions = task.actions
    stats = SearchStats()
    log: list = []
    base_evals = evaluator.evaluations
    root = task.initial if start is None else start
    counter = itertools.count()

    def finish(status, node=None, state=None, reason=""):
        stats.evaluations = evaluator.evaluations - base_evals
        stats.max_rpg_layers = evaluator.max_layers
        plan = Plan(tuple(unwind(node))) if status == SOLVED else None
        return SearchOutcome(status, plan, stats, reason, state, log)

    try:
        budget.check()
        h = evaluator(root, goals).h
        if h == INF:
            return finish(UNSOLVABLE, reason="goals relaxed-unreachable from the initial state")
        seen = {root}
        open_list = [(h, next(counter), root, None)]
        while open_list:
            budget.check()
            _, _, s, node = heapq.heappop(open_list)
            if goal_set <= s:
                return finish(SOLVED, node, s)
            stats.expansions += 1
            for a in successors(s):
                s2 = apply(s, actions[a])
                if s2 in seen:
                    continue
                seen.add(s2)
                h2 = evaluator(s2, goals).h
                if h2 == INF:
                    continue
                if config.trace:
                    log.append(("expand", a))
                heapq.heappush(open_list, (h2, next(counter), s2, (a, node)))
                budget.check()
    except Exhausted as exc:
        return finish(EXHAUSTED, reason=str(exc))
    return finish(UNSOLVABLE, reason="state space exhausted")
