"""Grounded planning tasks: facts, actions with conditional effects, states.

Facts are dense integer ids indexing ``Task.facts``.  A state is an immutable
set of fact ids; its canonical form is the ascending id tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence


class InapplicableError(RuntimeError):
    """An action was applied in a state that does not satisfy its precondition."""


class PlanError(ValueError):
    """A plan references something the task does not define."""


class State(frozenset):
    """Immutable set of fact ids."""

    __slots__ = ()

    def canonical(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def __repr__(self) -> str:
        return f"State({list(self.canonical())})"


@dataclass(frozen=True)
class ConditionalEffect:
    condition: frozenset[int] = frozenset()
    adds: frozenset[int] = frozenset()
    deletes: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.adds & self.deletes:
            raise ValueError("an effect may not add and delete the same fact")


@dataclass(frozen=True)
class GroundAction:
    id: int
    name: str
    args: tuple[str, ...]
    pre: frozenset[int]
    effects: tuple[ConditionalEffect, ...]

    @property
    def label(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"

    @property
    def add(self) -> frozenset[int]:
        """Adds of the unconditional effects."""
        out: frozenset[int] = frozenset()
        for eff in self.effects:
            if not eff.condition:
                out |= eff.adds
        return out

    @property
    def delete(self) -> frozenset[int]:
        """Deletes of the unconditional effects."""
        out: frozenset[int] = frozenset()
        for eff in self.effects:
            if not eff.condition:
                out |= eff.deletes
        return out

    @property
    def is_strips(self) -> bool:
        return len(self.effects) == 1 and not self.effects[0].condition

    def __repr__(self) -> str:
        return f"<{self.id}:{self.label}>"


@dataclass(frozen=True)
class Task:
    facts: tuple[str, ...]
    actions: tuple[GroundAction, ...]
    initial: State
    goals: tuple[int, ...]
    # goal facts known to be unreachable at grounding time (h(I) will be infinite)
    unreachable_goals: frozenset[int] = frozenset()
    name: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.facts)
        referenced = set(self.initial) | set(self.goals)
        for a in self.actions:
            referenced |= a.pre
            for e in a.effects:
                referenced |= e.condition | e.adds | e.deletes
        if referenced and (min(referenced) < 0 or max(referenced) >= n):
            raise ValueError("task references a fact id outside the fact table")
        for i, a in enumerate(self.actions):
            if a.id != i:
                raise ValueError(f"action {a.label} has id {a.id}, expected {i}")
        object.__setattr__(self, "_index", {f: i for i, f in enumerate(self.facts)})

    @property
    def goal_set(self) -> frozenset[int]:
        return frozenset(self.goals)

    @property
    def unsolvable(self) -> bool:
        return bool(self.unreachable_goals)

    def fact_id(self, atom: str) -> int:
        return self._index[atom]

    def state(self, atoms: Iterable[str]) -> State:
        return State(self._index[a] for a in atoms)

    def atoms(self, state: Iterable[int]) -> list[str]:
        return [self.facts[f] for f in sorted(state)]

    def find_action(self, label: str) -> GroundAction:
        label = " ".join(label.lower().split())
        for a in self.actions:
            if a.label == label:
                return a
        raise PlanError(f"unknown action {label}")

    def dump(self) -> str:
        """Deterministic text serialization (used to compare groundings)."""
        lines = [f"facts {len(self.facts)}"]
        lines += [f"{i} {f}" for i, f in enumerate(self.facts)]
        lines.append(f"actions {len(self.actions)}")
        for a in self.actions:
            lines.append(f"{a.id} {a.label} pre={sorted(a.pre)}")
            for e in a.effects:
                lines.append(
                    f"  when={sorted(e.condition)} add={sorted(e.adds)} del={sorted(e.deletes)}"
                )
        lines.append(f"init {list(self.initial.canonical())}")
        lines.append(f"goal {list(self.goals)}")
        lines.append(f"unreachable {sorted(self.unreachable_goals)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Plan:
    steps: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failing_step: int | None
    final_state: State
    goals_satisfied: bool


def applicable(state: frozenset[int], action: GroundAction) -> bool:
    return action.pre <= state


def apply(state: frozenset[int], action: GroundAction) -> State:
    """Successor state; deletes of appearing effects win over their adds."""
    if not action.pre <= state:
        raise InapplicableError(f"{action.label} is not applicable")
    effects = action.effects
    if len(effects) == 1 and not effects[0].condition:
        eff = effects[0]
        return State((state | eff.adds) - eff.deletes)
    adds: set[int] = set()
    dels: set[int] = set()
    for eff in effects:
        if eff.condition <= state:
            adds |= eff.adds
            dels |= eff.deletes
    return State((state | adds) - dels)


def relax(task: Task) -> Task:
    actions = tuple(
        replace(
            a,
            effects=tuple(
                ConditionalEffect(e.condition, e.adds, frozenset()) for e in a.effects
            ),
        )
        for a in task.actions
    )
    return replace(task, actions=actions)


def validate_plan(task: Task, plan: Plan | Sequence[int]) -> ValidationReport:
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    n = len(task.actions)
    for s in steps:
        if not isinstance(s, int) or not 0 <= s < n:
            raise PlanError(f"unknown action id {s!r}")
    state = task.initial
    for i, s in enumerate(steps):
        action = task.actions[s]
        if not action.pre <= state:
            return ValidationReport(False, i, state, task.goal_set <= state)
        state = apply(state, action)
    ok = task.goal_set <= state
    return ValidationReport(ok, None, state, ok)


def build_task(
    actions: Sequence[tuple],
    init: Iterable[str],
    goals: Iterable[str],
    name: str = "",
) -> Task:
    """Build a task from named atoms.

    Each action is ``(name, pre, add, del)`` or ``(name, pre, effects)`` where
    effects is a list of ``(condition, add, del)`` triples.  Atoms are plain
    strings; the fact table is built in first-mention order.
    """
    init = list(init)
    goals = list(goals)
    table: dict[str, int] = {}

    def ids(atoms: Iterable[str]) -> frozenset[int]:
        out = []
        for atom in atoms:
            if atom not in table:
                table[atom] = len(table)
            out.append(table[atom])
        return frozenset(out)

    ids(init)
    built = []
    for i, spec in enumerate(actions):
        if len(spec) == 4:
            aname, pre, add, dele = spec
            effs = [((), add, dele)]
        else:
            aname, pre, effs = spec
        pre_ids = ids(pre)
        effects = []
        for cond, add, dele in effs:
            c, a, d = ids(cond), ids(add), ids(dele)
            effects.append(ConditionalEffect(c, a - d, d))
        parts = aname.split()
        built.append(GroundAction(i, parts[0], tuple(parts[1:]), pre_ids, tuple(effects)))
    ids(goals)
    ordered_goals = tuple(dict.fromkeys(table[g] for g in goals))
    facts = tuple(sorted(table, key=table.get))
    return Task(facts, tuple(built), State(ids(init)), ordered_goals, name=name)
