"""Grounding: static predicates, reachable ground actions, connectivity graph."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..task import ConditionalEffect, GroundAction, State, Task
from .parser import Atom, LiftedTask

GroundAtom = tuple[str, tuple[str, ...]]


def atom_text(atom: GroundAtom) -> str:
    pred, args = atom
    return "(" + " ".join((pred,) + args) + ")"


def detect_statics(lifted: LiftedTask) -> frozenset[str]:
    affected = set()
    for schema in lifted.schemata:
        for eff in schema.effects:
            affected.update(a.predicate for a in eff.adds)
            affected.update(a.predicate for a in eff.deletes)
    return frozenset(p for p in lifted.predicates if p not in affected)


@dataclass
class _Candidate:
    name: str
    args: tuple[str, ...]
    pre: tuple[GroundAtom, ...]
    # (condition, adds, deletes) per ground effect
    effects: list[tuple[tuple[GroundAtom, ...], tuple[GroundAtom, ...], tuple[GroundAtom, ...]]]


def _bindings(lifted: LiftedTask, params, static_atoms, static_true):
    """Yield parameter bindings in declaration order, pruning on static atoms early."""
    domains = [lifted.objects_of(t) for _, t in params]
    names = [v for v, _ in params]
    position = {v: i for i, v in enumerate(names)}
    # check each static atom once its last variable is bound
    checks: list[list[Atom]] = [[] for _ in names]
    ground_checks: list[Atom] = []
    for atom in static_atoms:
        idx = [position[a] for a in atom.args if a in position]
        if idx:
            checks[max(idx)].append(atom)
        else:
            ground_checks.append(atom)
    for atom in ground_checks:
        if (atom.predicate, atom.args) not in static_true:
            return
    binding: dict[str, str] = {}

    def rec(k):
        if k == len(names):
            yield dict(binding)
            return
        for obj in domains[k]:
            binding[names[k]] = obj
            if all(a.ground(binding) in static_true for a in checks[k]):
                yield from rec(k + 1)
        binding.pop(names[k], None)

    yield from rec(0)


def _instantiate(lifted: LiftedTask, statics: frozenset[str], static_true: set) -> list[_Candidate]:
    out = []
    for schema in lifted.schemata:
        static_pre = [a for a in schema.pre if a.predicate in statics]
        fluent_pre = [a for a in schema.pre if a.predicate not in statics]
        for binding in _bindings(lifted, schema.params, static_pre, static_true):
            args = tuple(binding[v] for v, _ in schema.params)
            pre = tuple(dict.fromkeys(a.ground(binding) for a in fluent_pre))
            effects = []
            for eff in schema.effects:
                if eff.params:
                    spaces = [lifted.objects_of(t) for _, t in eff.params]
                    combos = itertools.product(*spaces)
                else:
                    combos = [()]
                for combo in combos:
                    b = dict(binding)
                    b.update(zip((v for v, _ in eff.params), combo))
                    cond = []
                    dead = False
                    for a in eff.condition:
                        g = a.ground(b)
                        if a.predicate in statics:
                            if g not in static_true:
                                dead = True
                                break
                        else:
                            cond.append(g)
                    if dead:
                        continue
                    effects.append(
                        (
                            tuple(dict.fromkeys(cond)),
                            tuple(dict.fromkeys(a.ground(b) for a in eff.adds)),
                            tuple(dict.fromkeys(a.ground(b) for a in eff.deletes)),
                        )
                    )
            out.append(_Candidate(schema.name, args, pre, effects))
    return out


def relaxed_reachable(candidates: list[_Candidate], init: set) -> tuple[set, list[bool], list[list[bool]]]:
    """Delete-relaxed fixpoint over candidate actions and their effects."""
    reached = set(init)
    keep = [False] * len(candidates)
    eff_on = [[False] * len(c.effects) for c in candidates]
    changed = True
    while changed:
        changed = False
        for i, c in enumerate(candidates):
            if not keep[i]:
                if not all(p in reached for p in c.pre):
                    continue
                keep[i] = True
                changed = True
            for j, (cond, adds, _) in enumerate(c.effects):
                if eff_on[i][j] or not all(p in reached for p in cond):
                    continue
                eff_on[i][j] = True
                changed = True
                reached.update(adds)
    return reached, keep, eff_on


class ConnectivityGraph:
    """Fact/effect incidence index shared by every heuristic evaluation.

    Effects are numbered globally in (action id, effect index) order, so
    "lowest effect id" and "lowest (action, effect)" agree.  Every list is
    ascending.
    """

    def __init__(self, task: Task):
        self.task = task
        nf = len(task.facts)
        self.n_facts = nf
        self.n_actions = len(task.actions)
        self.pre_size = [len(a.pre) for a in task.actions]
        self.act_eff_start = [0]
        self.eff_action: list[int] = []
        self.eff_index: list[int] = []
        self.cond_size: list[int] = []
        needs, adds, dels, implied = [], [], [], []
        self.adders: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
        self.pre_of: list[list[int]] = [[] for _ in range(nf)]
        self.cond_of: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
        for a in task.actions:
            base = len(self.eff_action)
            for f in sorted(a.pre):
                self.pre_of[f].append(a.id)
            for k, e in enumerate(a.effects):
                self.eff_action.append(a.id)
                self.eff_index.append(k)
                self.cond_size.append(len(e.condition))
                needs.append(sorted(a.pre | e.condition))
                adds.append(sorted(e.adds))
                dels.append(sorted(e.deletes))
                implied.append(
                    [base + j for j, o in enumerate(a.effects) if o.condition <= e.condition]
                )
                for f in sorted(e.adds):
                    self.adders[f].append((a.id, k))
                for f in sorted(e.condition):
                    self.cond_of[f].append((a.id, k))
            self.act_eff_start.append(len(self.eff_action))
        self.n_effects = len(self.eff_action)
        self.eff_need_start, self.eff_need = _csr(needs)
        self.eff_add_start, self.eff_add = _csr(adds)
        self.eff_del_start, self.eff_del = _csr(dels)
        self.eff_implied_start, self.eff_implied = _csr(implied)
        consumers: list[list[int]] = [[] for _ in range(nf)]
        achievers: list[list[int]] = [[] for _ in range(nf)]
        for e, fs in enumerate(needs):
            for f in fs:
                consumers[f].append(e)
        for e, fs in enumerate(adds):
            for f in fs:
                achievers[f].append(e)
        self.fact_consumer_start, self.fact_consumer = _csr(consumers)
        self.fact_achiever_start, self.fact_achiever = _csr(achievers)
        self.zero_need = [e for e, fs in enumerate(needs) if not fs]
        self.eff_needs = [frozenset(fs) for fs in needs]
        self.eff_dels = [frozenset(fs) for fs in dels]

    def effect_id(self, action: int, index: int) -> int:
        return self.act_eff_start[action] + index

    def effect_key(self, e: int) -> tuple[int, int]:
        return self.eff_action[e], self.eff_index[e]

    def achievers(self, f: int) -> list[int]:
        return self.fact_achiever[self.fact_achiever_start[f]:self.fact_achiever_start[f + 1]]

    def needs(self, e: int) -> list[int]:
        return self.eff_need[self.eff_need_start[e]:self.eff_need_start[e + 1]]

    def adds(self, e: int) -> list[int]:
        return self.eff_add[self.eff_add_start[e]:self.eff_add_start[e + 1]]


def _csr(rows: list[list[int]]) -> tuple[list[int], list[int]]:
    start = [0]
    flat: list[int] = []
    for r in rows:
        flat.extend(r)
        start.append(len(flat))
    return start, flat


def build_connectivity(task: Task) -> ConnectivityGraph:
    return ConnectivityGraph(task)


def ground(lifted: LiftedTask) -> tuple[Task, ConnectivityGraph]:
    statics = detect_statics(lifted)
    init_atoms = list(lifted.init)
    static_true = {a for a in init_atoms if a[0] in statics}
    fluent_init = [a for a in init_atoms if a[0] not in statics]

    candidates = _instantiate(lifted, statics, static_true)
    _, keep, eff_on = relaxed_reachable(candidates, set(fluent_init))

    table: dict[GroundAtom, int] = {}
    for a in fluent_init:
        table.setdefault(a, len(table))
    kept = []
    for i, c in enumerate(candidates):
        if not keep[i]:
            continue
        effs = [e for j, e in enumerate(c.effects) if eff_on[i][j]]
        kept.append((c, effs))
        for _, adds, _ in effs:
            for a in adds:
                table.setdefault(a, len(table))

    goals = []
    unreachable = []
    for g in lifted.goal:
        if g[0] in statics:
            if g in static_true:
                continue
            unreachable.append(g)
        elif g not in table:
            unreachable.append(g)
        goals.append(g)
    for g in unreachable:
        table.setdefault(g, len(table))

    actions = []
    for c, effs in kept:
        pre = frozenset(table[p] for p in c.pre)
        effects = []
        for cond, adds, dels in effs:
            d = frozenset(table[x] for x in dels if x in table)
            a = frozenset(table[x] for x in adds) - d
            effects.append(ConditionalEffect(frozenset(table[x] for x in cond), a, d))
        if not effects:
            effects.append(ConditionalEffect())
        actions.append(GroundAction(len(actions), c.name, c.args, pre, tuple(effects)))

    facts = tuple(atom_text(a) for a in sorted(table, key=table.get))
    task = Task(
        facts=facts,
        actions=tuple(actions),
        initial=State(table[a] for a in fluent_init),
        goals=tuple(dict.fromkeys(table[g] for g in goals)),
        unreachable_goals=frozenset(table[g] for g in unreachable),
        name=lifted.problem_name,
    )
    return task, ConnectivityGraph(task)


def ground_texts(domain_text: str, problem_text: str) -> tuple[Task, ConnectivityGraph]:
    from .parser import parse

    return ground(parse(domain_text, problem_text))
