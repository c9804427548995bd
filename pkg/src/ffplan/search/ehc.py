"""Enforced hill-climbing with helpful-action and added-goal-deletion pruning."""

from __future__ import annotations

from collections import deque

from ..heuristic import INF, Evaluation, Evaluator, LayeredRelaxedPlan
from ..pddl.grounding import ConnectivityGraph
from ..task import GroundAction, Plan, Task, apply
from .common import graph_for, successor_generator, unwind
from .config import (
    EHC_FAILED,
    EXHAUSTED,
    SOLVED,
    Budget,
    Exhausted,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)


def added_goals(parent, action: GroundAction, child, targets) -> list[int]:
    """Target goals the transition made true through an appearing effect."""
    out = []
    for g in targets:
        if g in child and g not in parent:
            for eff in action.effects:
                if g in eff.adds and eff.condition <= parent:
                    out.append(g)
                    break
    return out


def added_goal_deletion_check(
    graph: ConnectivityGraph,
    parent,
    action: GroundAction,
    child,
    child_plan: LayeredRelaxedPlan | Evaluation,
    target_goals,
) -> bool:
    """True when the child's relaxed plan deletes a goal the transition just added."""
    added = added_goals(parent, action, child, target_goals)
    if not added:
        return False
    if isinstance(child_plan, Evaluation):
        selected = child_plan.selected
    else:
        selected = [e for layer in child_plan.effects for e in layer]
    start, implied, dels = graph.eff_implied_start, graph.eff_implied, graph.eff_dels
    for e in selected:
        for j in implied[start[e]:start[e + 1]]:
            if any(g in dels[j] for g in added):
                return True
    return False


def _bfs(task, graph, goals, config, evaluator, budget, stats, log, state, ev):
    """Breadth-first search for the first state strictly better than ``state``."""
    actions = task.actions
    successors = successor_generator(task)
    need_plan = config.helpful or config.agd
    h0 = ev.h
    visited = {state}
    queue = deque([(state, ev, None, 0)])
    while queue:
        budget.check()
        s, ev_s, node, depth = queue.popleft()
        stats.expansions += 1
        ids = evaluator.helpful(s, ev_s) if config.helpful else successors(s)
        for a in ids:
            s2 = apply(s, actions[a])
            if s2 in visited:
                continue
            visited.add(s2)
            budget.check()
            ev2 = evaluator(s2, goals, need_plan)
            if ev2.h == INF:
                continue
            if config.agd and added_goal_deletion_check(graph, s, actions[a], s2, ev2, goals):
                if config.trace:
                    log.append(("prune", a))
                continue
            if config.trace:
                log.append(("expand", a))
            if depth + 1 > stats.max_bfs_depth:
                stats.max_bfs_depth = depth + 1
            if ev2.h < h0:
                return s2, ev2, unwind((a, node))
            queue.append((s2, ev2, (a, node), depth + 1))
    return None


def enforced_hill_climbing(
    task: Task,
    goals=None,
    config: SearchConfig = SearchConfig(),
    *,
    start=None,
    evaluator: Evaluator | None = None,
    budget: Budget | None = None,
) -> SearchOutcome:
    goals = tuple(task.goals if goals is None else goals)
    graph = graph_for(task)
    evaluator = evaluator or Evaluator(graph, config.heuristic)
    budget = budget or Budget(config, evaluator)
    stats = SearchStats()
    log: list = []
    state = task.initial if start is None else start
    need_plan = config.helpful or config.agd
    base_evals = evaluator.evaluations
    plan: list[int] = []

    def finish(status, reason=""):
        stats.evaluations = evaluator.evaluations - base_evals
        stats.max_rpg_layers = evaluator.max_layers
        return SearchOutcome(
            status, Plan(tuple(plan)) if status == SOLVED else None, stats, reason, state, log
        )

    try:
        budget.check()
        ev = evaluator(state, goals, need_plan)
        if ev.h == INF:
            return finish(EHC_FAILED, "dead end: goals relaxed-unreachable")
        stats.anchor_h.append(ev.h)
        while ev.h != 0:
            found = _bfs(task, graph, goals, config, evaluator, budget, stats, log, state, ev)
            if found is None:
                return finish(EHC_FAILED, "breadth-first search exhausted")
            state, ev, path = found
            plan.extend(path)
            stats.ehc_iterations += 1
            stats.anchor_h.append(ev.h)
    except Exhausted as exc:
        return finish(EXHAUSTED, str(exc))
    return finish(SOLVED)
