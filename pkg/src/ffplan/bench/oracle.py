"""Exhaustive breadth-first oracles for small tasks."""

from __future__ import annotations

from collections import deque

from ..task import Plan, Task, apply


class OracleBudgetExceeded(RuntimeError):
    """The state budget ran out before the search could decide (answer unknown)."""


def brute_force_optimal(
    task: Task, depth_limit: int | None = None, budget: int = 200_000
) -> tuple[int, Plan] | None:
    """Shortest plan by breadth-first search over real states.

    Returns None when no plan exists within ``depth_limit``.
    """
    goals = task.goal_set
    start = task.initial
    if goals <= start:
        return 0, Plan()
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        s, d = queue.popleft()
        if depth_limit is not None and d >= depth_limit:
            continue
        for a in task.actions:
            if not a.pre <= s:
                continue
            s2 = apply(s, a)
            if s2 in parent:
                continue
            parent[s2] = (s, a.id)
            if goals <= s2:
                steps = []
                cur = s2
                while parent[cur] is not None:
                    cur, aid = parent[cur]
                    steps.append(aid)
                return d + 1, Plan(tuple(reversed(steps)))
            if len(parent) > budget:
                raise OracleBudgetExceeded(f"more than {budget} states")
            queue.append((s2, d + 1))
    return None


def brute_force_relaxed_optimal(
    task: Task, limit: int | None = None, budget: int = 200_000
) -> int | None:
    """Length of a shortest plan for the delete relaxation, or None if there is none."""
    goals = task.goal_set
    start = frozenset(task.initial)
    if goals <= start:
        return 0
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        if limit is not None and depth >= limit:
            return None
        depth += 1
        nxt = []
        for s in frontier:
            for a in task.actions:
                if not a.pre <= s:
                    continue
                added = set()
                for e in a.effects:
                    if e.condition <= s:
                        added |= e.adds
                if added <= s:
                    continue
                s2 = s | added
                if goals <= s2:
                    return depth
                if s2 not in seen:
                    seen.add(s2)
                    if len(seen) > budget:
                        raise OracleBudgetExceeded(f"more than {budget} states")
                    nxt.append(s2)
        frontier = nxt
    return None
