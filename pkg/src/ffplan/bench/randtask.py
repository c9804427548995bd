"""Small random STRIPS tasks for oracle cross-checks."""

from __future__ import annotations

import random

from ..task import Task, build_task


def random_task(
    rng: random.Random,
    max_facts: int = 8,
    max_actions: int = 10,
    conditional: bool = False,
) -> Task:
    """Uniform random pre/add/del sets over at most ``max_facts`` facts.

    With ``conditional`` some actions get a second, conditional effect.
    """
    nf = rng.randint(2, max_facts)
    na = rng.randint(1, max_actions)
    atoms = [f"f{i}" for i in range(nf)]

    def subset(p: float, pool=atoms) -> list[str]:
        return [x for x in pool if rng.random() < p]

    actions = []
    for i in range(na):
        pre = subset(0.25)
        add = subset(0.3) or [rng.choice(atoms)]
        dele = [x for x in subset(0.2) if x not in add]
        if conditional and rng.random() < 0.4:
            cond = subset(0.25) or [rng.choice(atoms)]
            cadd = subset(0.25) or [rng.choice(atoms)]
            cdel = [x for x in subset(0.15) if x not in cadd]
            actions.append((f"a{i}", pre, [((), add, dele), (cond, cadd, cdel)]))
        else:
            actions.append((f"a{i}", pre, add, dele))
    init = subset(0.3)
    goals = subset(0.35) or [rng.choice(atoms)]
    return build_task(actions, init, goals, name=f"rand-{nf}-{na}")
