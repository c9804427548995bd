"""Relaxed planning graph heuristics: h_ff, h_add, relaxed plans, helpful actions.

Results use ``INF`` (``math.inf``) for unreachable layers and infinite
estimates; everything else is a plain int.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ..pddl.grounding import ConnectivityGraph
from .kernel import COMPILED, Kernel, PyKernel, UNREACHED

INF = math.inf

__all__ = [
    "COMPILED",
    "Evaluation",
    "Evaluator",
    "INF",
    "LayeredRelaxedPlan",
    "RpgResult",
    "build_rpg",
    "dump_layers",
    "extract_relaxed_plan",
    "h_add",
    "h_ff",
    "helpful_actions",
    "kernel_for",
]


def _ext(x: int) -> int | float:
    return INF if x >= UNREACHED else x


def kernel_for(graph: ConnectivityGraph, pure: bool = False):
    """The cached evaluation workspace of ``graph`` (one per kernel flavour)."""
    attr = "_py_kernel" if pure or Kernel is PyKernel else "_c_kernel"
    k = getattr(graph, attr, None)
    if k is None:
        k = PyKernel(graph) if attr == "_py_kernel" else Kernel(graph)
        setattr(graph, attr, k)
    return k


@dataclass(frozen=True)
class RpgResult:
    fact_layer: tuple
    effect_layer: tuple
    m: int | float
    reachable: bool
    layers_built: int

    def difficulty(self, graph: ConnectivityGraph, effect: int) -> int:
        return sum(self.fact_layer[f] for f in graph.needs(effect))


@dataclass(frozen=True)
class LayeredRelaxedPlan:
    """Selected effects per time step 1..m, as global effect ids and (action, effect) pairs."""

    effects: tuple[tuple[int, ...], ...]
    layers: tuple[tuple[tuple[int, int], ...], ...]
    g1: tuple[int, ...]
    # goals true at layer 0; they stay in the first goal set for helpful actions
    carried_goals: tuple[int, ...] = ()

    @property
    def total_actions(self) -> int:
        return sum(len({a for a, _ in layer}) for layer in self.layers)

    def actions(self) -> list[int]:
        """Action ids in ascending time step, selection order within a step."""
        out: list[int] = []
        for layer in self.layers:
            for a, _ in layer:
                if a not in out:
                    out.append(a)
        return out

    @property
    def first_goals(self) -> tuple[int, ...]:
        return tuple(dict.fromkeys(self.g1 + self.carried_goals))


def _plan(graph: ConnectivityGraph, layers, g1, carried) -> LayeredRelaxedPlan:
    key = graph.effect_key
    return LayeredRelaxedPlan(
        effects=tuple(tuple(sel) for sel in layers),
        layers=tuple(tuple(key(e) for e in sel) for sel in layers),
        g1=tuple(g1),
        carried_goals=tuple(carried),
    )


def build_rpg(graph: ConnectivityGraph, state: Iterable[int], goals: Iterable[int]) -> RpgResult:
    k = kernel_for(graph)
    goals = tuple(goals)
    m = k.build(state, goals)
    return RpgResult(
        fact_layer=tuple(_ext(x) for x in k.fact_layer),
        effect_layer=tuple(_ext(x) for x in k.effect_layer),
        m=INF if m < 0 else m,
        reachable=m >= 0,
        layers_built=k.layers_built,
    )


def extract_relaxed_plan(
    rpg: RpgResult, graph: ConnectivityGraph, goals: Iterable[int]
) -> LayeredRelaxedPlan:
    if not rpg.reachable:
        raise ValueError("relaxed plan extraction needs a graph that reaches every goal")
    k = kernel_for(graph, pure=True)
    k.fact_layer = [UNREACHED if x == INF else x for x in rpg.fact_layer]
    k.effect_layer = [UNREACHED if x == INF else x for x in rpg.effect_layer]
    k.m = rpg.m
    return _plan(graph, *k.extract(tuple(goals)))


def h_ff(graph: ConnectivityGraph, state: Iterable[int], goals: Iterable[int]) -> int | float:
    h = kernel_for(graph).h_ff(state, tuple(goals))
    return INF if h < 0 else h


def h_add(graph: ConnectivityGraph, state: Iterable[int], goals: Iterable[int]) -> int | float:
    h = kernel_for(graph).h_add(state, tuple(goals))
    return INF if h < 0 else h


def helpful_actions(
    graph: ConnectivityGraph, state: frozenset[int], plan: LayeredRelaxedPlan
) -> list[int]:
    """Applicable actions with an appearing effect that adds a first-step goal, ascending."""
    return _helpful(graph, state, plan.first_goals)


def _helpful(graph: ConnectivityGraph, state, targets) -> list[int]:
    out = set()
    needs = graph.eff_needs
    act = graph.eff_action
    for g in targets:
        for e in graph.achievers(g):
            a = act[e]
            if a not in out and needs[e] <= state:
                out.add(a)
    return sorted(out)


def dump_layers(rpg: RpgResult, graph: ConnectivityGraph) -> str:
    """One ``layer fact`` line per reached fact, by layer then fact id."""
    facts = graph.task.facts
    rows = sorted((lay, f) for f, lay in enumerate(rpg.fact_layer) if lay != INF)
    return "".join(f"{lay} {facts[f]}\n" for lay, f in rows)


@dataclass(frozen=True)
class Evaluation:
    h: int | float
    plan: LayeredRelaxedPlan | None
    # effects selected anywhere in the relaxed plan, for goal-deletion checks
    selected: tuple[int, ...] = ()

    @property
    def dead_end(self) -> bool:
        return self.h == INF


class Evaluator:
    """Counts heuristic evaluations for one search over one graph."""

    def __init__(self, graph: ConnectivityGraph, heuristic: str = "ff", pure: bool = False):
        if heuristic not in ("ff", "add"):
            raise ValueError(f"unknown heuristic {heuristic!r}")
        self.graph = graph
        self.heuristic = heuristic
        self.kernel = kernel_for(graph, pure=pure)
        self.evaluations = 0
        self.max_layers = 0

    def __call__(self, state, goals: tuple[int, ...], need_plan: bool = False) -> Evaluation:
        """Evaluate ``state``; the relaxed plan is built for h_ff, or on request for h_add."""
        self.evaluations += 1
        k = self.kernel
        if self.heuristic == "ff" or need_plan:
            h, layers, g1, carried = k.evaluate(state, goals)
            if k.layers_built > self.max_layers:
                self.max_layers = k.layers_built
            if h < 0:
                return Evaluation(INF, None)
            if self.heuristic == "add":
                h = k.h_add(state, goals)
            plan = _plan(self.graph, layers, g1, carried)
            selected = tuple(e for sel in layers for e in sel)
            return Evaluation(h, plan, selected)
        h = k.h_add(state, goals)
        return Evaluation(INF if h < 0 else h, None)

    def helpful(self, state, evaluation: Evaluation) -> list[int]:
        if evaluation.plan is None:
            return []
        return _helpful(self.graph, state, evaluation.plan.first_goals)
