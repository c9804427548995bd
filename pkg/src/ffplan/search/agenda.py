"""Goal agenda from direct goal conflicts."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..task import Task
from .common import graph_for


@dataclass(frozen=True)
class GoalAgenda:
    entries: tuple[tuple[int, ...], ...]
    # a goal with no achiever that is false initially
    unsolvable: bool = False

    def cumulative(self):
        acc: tuple[int, ...] = ()
        for entry in self.entries:
            acc = acc + entry
            yield acc

    def __len__(self) -> int:
        return len(self.entries)


def goal_orderings(task: Task) -> list[tuple[int, int]]:
    """Pairs ``(b, a)``: every action adding b deletes a, so b comes first."""
    graph = graph_for(task)
    uncond_dels = [a.delete for a in task.actions]
    goals = list(task.goals)
    out = []
    for b in goals:
        achievers = graph.achievers(b)
        if not achievers:
            continue
        deleted = None
        for e in achievers:
            d = graph.eff_dels[e] | uncond_dels[graph.eff_action[e]]
            deleted = d if deleted is None else deleted & d
        for a in goals:
            if a != b and a in deleted:
                out.append((b, a))
    return out


def compute_goal_agenda(task: Task) -> GoalAgenda:
    graph = graph_for(task)
    goals = list(task.goals)
    unsolvable = any(
        not graph.achievers(g) and g not in task.initial for g in goals
    ) or bool(task.unreachable_goals)
    order = goal_orderings(task)
    if not order:
        return GoalAgenda((tuple(goals),) if goals else (), unsolvable)
    dg = nx.DiGraph()
    dg.add_nodes_from(goals)
    dg.add_edges_from(order)
    cond = nx.condensation(dg)
    position = {g: i for i, g in enumerate(goals)}
    entries = []
    for generation in nx.topological_generations(cond):
        members = set()
        for c in generation:
            members |= cond.nodes[c]["members"]
        entries.append(tuple(sorted(members, key=position.get)))
    return GoalAgenda(tuple(entries), unsolvable)
