from __future__ import annotations

from ..pddl.grounding import ConnectivityGraph
from ..task import Task


def graph_for(task: Task) -> ConnectivityGraph:
    g = task.__dict__.get("_graph")
    if g is None:
        g = ConnectivityGraph(task)
        object.__setattr__(task, "_graph", g)
    return g


class SuccessorGenerator:
    """Applicable actions of a state in ascending id, via a trigger-fact index."""

    def __init__(self, task: Task) -> None:
        self.pre = [a.pre for a in task.actions]
        self.always = [a.id for a in task.actions if not a.pre]
        self.trigger: dict[int, list[int]] = {}
        for a in task.actions:
            if a.pre:
                self.trigger.setdefault(min(a.pre), []).append(a.id)

    def __call__(self, state) -> list[int]:
        pre = self.pre
        out = list(self.always)
        trig = self.trigger
        for f in state:
            cands = trig.get(f)
            if cands:
                out.extend(a for a in cands if pre[a] <= state)
        out.sort()
        return out


def successor_generator(task: Task) -> SuccessorGenerator:
    g = task.__dict__.get("_succ")
    if g is None:
        g = SuccessorGenerator(task)
        object.__setattr__(task, "_succ", g)
    return g


def unwind(node) -> list[int]:
    """Action ids along a (action, parent) linked path, root first."""
    out = []
    while node is not None:
        out.append(node[0])
        node = node[1]
    out.reverse()
    return out
