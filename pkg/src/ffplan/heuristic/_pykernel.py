"""Pure-Python relaxed planning graph kernel.

Mirrors the compiled kernel in ``_ckernel.pyx`` call for call.  Layers are
plain ints; ``UNREACHED`` marks a fact or effect that never enters the graph.
"""

from __future__ import annotations

UNREACHED = 1 << 30


class PyKernel:
    """Reusable workspace for relaxed planning graph evaluations on one task.

    Not thread-safe: concurrent evaluations need one kernel each.
    """

    compiled = False

    def __init__(self, graph) -> None:
        self.n_facts = nf = graph.n_facts
        self.n_effects = ne = graph.n_effects

        def rows(start, flat, n):
            return [flat[start[i]:start[i + 1]] for i in range(n)]

        self.consumers = rows(graph.fact_consumer_start, graph.fact_consumer, nf)
        self.achievers = rows(graph.fact_achiever_start, graph.fact_achiever, nf)
        self.needs = rows(graph.eff_need_start, graph.eff_need, ne)
        self.adds = rows(graph.eff_add_start, graph.eff_add, ne)
        self.implied = rows(graph.eff_implied_start, graph.eff_implied, ne)
        self.need_count = [len(r) for r in self.needs]
        self.eff_action = list(graph.eff_action)
        self.zero_need = list(graph.zero_need)
        self.fact_layer = [UNREACHED] * nf
        self.effect_layer = [UNREACHED] * ne
        self.m = -1
        self.layers_built = 0

    # ------------------------------------------------------------------ graph

    def build(self, state, goals) -> int:
        """Layer memberships for ``state``; returns m, or -1 if a goal is unreachable."""
        fl = [UNREACHED] * self.n_facts
        el = [UNREACHED] * self.n_effects
        cnt = [0] * self.n_effects
        need = self.need_count
        consumers = self.consumers
        adds = self.adds
        self.fact_layer = fl
        self.effect_layer = el

        ready = list(self.zero_need)
        for f in state:
            fl[f] = 0
        for f in state:
            for e in consumers[f]:
                c = cnt[e] + 1
                cnt[e] = c
                if c == need[e]:
                    ready.append(e)
        pending = {g for g in goals if fl[g] != 0}
        layer = 0
        while pending:
            new = []
            for e in ready:
                el[e] = layer
                for f in adds[e]:
                    if fl[f] == UNREACHED:
                        fl[f] = layer + 1
                        new.append(f)
            if not new:
                self.m = -1
                self.layers_built = layer + 1
                return -1
            layer += 1
            ready = []
            for f in new:
                pending.discard(f)
                for e in consumers[f]:
                    c = cnt[e] + 1
                    cnt[e] = c
                    if c == need[e]:
                        ready.append(e)
        self.m = layer
        self.layers_built = layer + 1
        return layer

    def extract(self, goals):
        """Relaxed plan from the last ``build``.

        Returns ``(layers, g1, carried)``: selected effect ids for time steps
        1..m, the goal set at time step 1, and the goals already true at layer 0.
        """
        m = self.m
        if m < 0:
            raise ValueError("relaxed plan extraction on an unreachable graph")
        fl = self.fact_layer
        el = self.effect_layer
        achievers = self.achievers
        needs = self.needs
        adds = self.adds
        implied = self.implied
        goal_sets: list[list[int]] = [[] for _ in range(m + 1)]
        # 1: top-level goal only, 2: needed as a precondition
        in_goal: dict[int, int] = {}
        marked: dict[int, int] = {}
        carried = []
        for g in goals:
            lay = fl[g]
            if lay == 0:
                carried.append(g)
            elif g not in in_goal:
                in_goal[g] = 1
                goal_sets[lay].append(g)
        layers: list[list[int]] = [[] for _ in range(m)]
        for i in range(m, 0, -1):
            sel = layers[i - 1]
            for g in goal_sets[i]:
                k = marked.get(g, 0)
                # a later step's add only serves goals needed at the very end
                if k == i or (k == i + 1 and in_goal[g] == 1):
                    continue
                best = -1
                best_d = 0
                for e in achievers[g]:
                    if el[e] == i - 1:
                        d = 0
                        for f in needs[e]:
                            d += fl[f]
                        if best < 0 or d < best_d:
                            best, best_d = e, d
                sel.append(best)
                for f in needs[best]:
                    lay = fl[f]
                    if lay and marked.get(f, 0) != i:
                        if f not in in_goal:
                            goal_sets[lay].append(f)
                        in_goal[f] = 2
                for j in implied[best]:
                    for f in adds[j]:
                        marked[f] = i
        g1 = goal_sets[1] if m >= 1 else []
        return layers, g1, carried

    def evaluate(self, state, goals):
        """``(h, layers, g1, carried)``; h is -1 and the rest None when unreachable."""
        if self.build(state, goals) < 0:
            return -1, None, None, None
        layers, g1, carried = self.extract(goals)
        act = self.eff_action
        h = 0
        for sel in layers:
            if len(sel) == 1:
                h += 1
            else:
                h += len({act[e] for e in sel})
        return h, layers, g1, carried

    def h_ff(self, state, goals) -> int:
        return self.evaluate(state, goals)[0]

    def h_add(self, state, goals) -> int:
        """Sum of additive fact weights, -1 if some goal has infinite weight."""
        w = [UNREACHED] * self.n_facts
        self.weights = w
        for f in state:
            w[f] = 0
        consumers = self.consumers
        needs = self.needs
        adds = self.adds
        touched = set(self.zero_need)
        for f in state:
            touched.update(consumers[f])
        while touched:
            updates: dict[int, int] = {}
            for e in sorted(touched):
                s = 1
                for f in needs[e]:
                    x = w[f]
                    if x == UNREACHED:
                        s = -1
                        break
                    s += x
                if s < 0:
                    continue
                for f in adds[e]:
                    if s < w[f] and s < updates.get(f, UNREACHED):
                        updates[f] = s
            touched = set()
            for f, v in updates.items():
                w[f] = v
                touched.update(consumers[f])
        total = 0
        for g in goals:
            x = w[g]
            if x == UNREACHED:
                return -1
            total += x
        return total
