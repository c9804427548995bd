# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled relaxed planning graph kernel; same interface as ``PyKernel``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef enum:
    UNREACHED_C = 1 << 30

UNREACHED = UNREACHED_C


cdef int* _copy(object seq, Py_ssize_t n) except NULL:
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef class CKernel:
    cdef readonly int n_facts, n_effects, n_actions, m, layers_built
    cdef int *need_start
    cdef int *need
    cdef int *add_start
    cdef int *add
    cdef int *imp_start
    cdef int *imp
    cdef int *cons_start
    cdef int *cons
    cdef int *ach_start
    cdef int *ach
    cdef int *eff_action
    cdef int *zero_need
    cdef int n_zero
    # workspace
    cdef int *fl
    cdef int *el
    cdef int *cnt
    cdef int *ready
    cdef int *nxt
    cdef int *goal_mark
    cdef int *marked
    cdef int *in_goal
    cdef int *gs_next
    cdef int *gs_head
    cdef int *gs_tail
    cdef int *act_stamp
    cdef int *w
    cdef int *nw
    cdef char *touched
    cdef char *changed
    cdef int stamp

    compiled = True

    def __cinit__(self, graph):
        cdef int nf = graph.n_facts
        cdef int ne = graph.n_effects
        self.n_facts = nf
        self.n_effects = ne
        self.n_actions = graph.n_actions
        self.m = -1
        self.layers_built = 0
        self.stamp = 0
        self.need_start = _copy(graph.eff_need_start, ne + 1)
        self.need = _copy(graph.eff_need, len(graph.eff_need))
        self.add_start = _copy(graph.eff_add_start, ne + 1)
        self.add = _copy(graph.eff_add, len(graph.eff_add))
        self.imp_start = _copy(graph.eff_implied_start, ne + 1)
        self.imp = _copy(graph.eff_implied, len(graph.eff_implied))
        self.cons_start = _copy(graph.fact_consumer_start, nf + 1)
        self.cons = _copy(graph.fact_consumer, len(graph.fact_consumer))
        self.ach_start = _copy(graph.fact_achiever_start, nf + 1)
        self.ach = _copy(graph.fact_achiever, len(graph.fact_achiever))
        self.eff_action = _copy(graph.eff_action, ne)
        self.n_zero = len(graph.zero_need)
        self.zero_need = _copy(graph.zero_need, self.n_zero)
        self.fl = _copy([UNREACHED_C] * nf, nf)
        self.el = _copy([UNREACHED_C] * ne, ne)
        self.cnt = _copy([0] * ne, ne)
        self.ready = _copy([0] * ne, ne)
        self.nxt = _copy([0] * nf, nf)
        self.goal_mark = _copy([0] * nf, nf)
        self.marked = _copy([0] * nf, nf)
        self.in_goal = _copy([0] * nf, nf)
        self.gs_next = _copy([0] * nf, nf)
        self.gs_head = _copy([0] * (nf + 2), nf + 2)
        self.gs_tail = _copy([0] * (nf + 2), nf + 2)
        self.act_stamp = _copy([0] * self.n_actions, self.n_actions)
        self.w = _copy([0] * nf, nf)
        self.nw = _copy([0] * nf, nf)
        self.touched = <char*> malloc(ne + 1)
        self.changed = <char*> malloc(nf + 1)
        if self.touched == NULL or self.changed == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.need_start); free(self.need)
        free(self.add_start); free(self.add)
        free(self.imp_start); free(self.imp)
        free(self.cons_start); free(self.cons)
        free(self.ach_start); free(self.ach)
        free(self.eff_action); free(self.zero_need)
        free(self.fl); free(self.el); free(self.cnt); free(self.ready); free(self.nxt)
        free(self.goal_mark); free(self.marked); free(self.in_goal)
        free(self.gs_next); free(self.gs_head); free(self.gs_tail)
        free(self.act_stamp); free(self.w); free(self.nw)
        free(self.touched); free(self.changed)

    @property
    def fact_layer(self):
        return [self.fl[i] for i in range(self.n_facts)]

    @property
    def effect_layer(self):
        return [self.el[i] for i in range(self.n_effects)]

    cdef int _next_stamp(self):
        cdef int i
        self.stamp += 1
        if self.stamp >= 2000000000:
            self.stamp = 1
            for i in range(self.n_facts):
                self.goal_mark[i] = 0
            for i in range(self.n_actions):
                self.act_stamp[i] = 0
        return self.stamp

    cdef int _build(self, object state, object goals) except -2:
        cdef int nf = self.n_facts
        cdef int ne = self.n_effects
        cdef int *fl = self.fl
        cdef int *el = self.el
        cdef int *cnt = self.cnt
        cdef int *ready = self.ready
        cdef int *nxt = self.nxt
        cdef int n_ready = 0, n_new, i, j, k, e, f, c, layer = 0, pending = 0
        cdef int st = self._next_stamp()
        cdef int need_e
        for i in range(nf):
            fl[i] = UNREACHED_C
        for i in range(ne):
            el[i] = UNREACHED_C
            cnt[i] = 0
        for i in range(self.n_zero):
            ready[n_ready] = self.zero_need[i]
            n_ready += 1
        for obj in state:
            fl[<int> obj] = 0
        for obj in state:
            f = obj
            for k in range(self.cons_start[f], self.cons_start[f + 1]):
                e = self.cons[k]
                cnt[e] += 1
                if cnt[e] == self.need_start[e + 1] - self.need_start[e]:
                    ready[n_ready] = e
                    n_ready += 1
        for obj in goals:
            f = obj
            if fl[f] != 0 and self.goal_mark[f] != st:
                self.goal_mark[f] = st
                pending += 1
        while pending > 0:
            n_new = 0
            for i in range(n_ready):
                e = ready[i]
                el[e] = layer
                for k in range(self.add_start[e], self.add_start[e + 1]):
                    f = self.add[k]
                    if fl[f] == UNREACHED_C:
                        fl[f] = layer + 1
                        nxt[n_new] = f
                        n_new += 1
            if n_new == 0:
                self.m = -1
                self.layers_built = layer + 1
                return -1
            layer += 1
            n_ready = 0
            for i in range(n_new):
                f = nxt[i]
                if self.goal_mark[f] == st:
                    pending -= 1
                for k in range(self.cons_start[f], self.cons_start[f + 1]):
                    e = self.cons[k]
                    cnt[e] += 1
                    if cnt[e] == self.need_start[e + 1] - self.need_start[e]:
                        ready[n_ready] = e
                        n_ready += 1
        self.m = layer
        self.layers_built = layer + 1
        return layer

    def build(self, state, goals):
        """Layer memberships for ``state``; returns m, or -1 if a goal is unreachable."""
        return self._build(state, goals)

    def extract(self, goals):
        """Relaxed plan from the last ``build``: ``(layers, g1, carried)``."""
        cdef int m = self.m
        cdef int *fl = self.fl
        cdef int *el = self.el
        cdef int *marked = self.marked
        cdef int *in_goal = self.in_goal
        cdef int *gs_next = self.gs_next
        cdef int *gs_head = self.gs_head
        cdef int *gs_tail = self.gs_tail
        cdef int i, g, k, e, f, j, q, lay, best, best_d, d
        if m < 0:
            raise ValueError("relaxed plan extraction on an unreachable graph")
        for i in range(self.n_facts):
            marked[i] = 0
            in_goal[i] = 0
        for i in range(m + 1):
            gs_head[i] = -1
            gs_tail[i] = -1
        carried = []
        for obj in goals:
            g = obj
            lay = fl[g]
            if lay == 0:
                carried.append(g)
            elif not in_goal[g]:
                in_goal[g] = 1
                gs_next[g] = -1
                if gs_tail[lay] < 0:
                    gs_head[lay] = g
                else:
                    gs_next[gs_tail[lay]] = g
                gs_tail[lay] = g
        layers = [None] * m
        for i in range(m, 0, -1):
            sel = []
            g = gs_head[i]
            while g >= 0:
                k = marked[g]
                if k != i and not (k == i + 1 and in_goal[g] == 1):
                    best = -1
                    best_d = 0
                    for q in range(self.ach_start[g], self.ach_start[g + 1]):
                        e = self.ach[q]
                        if el[e] == i - 1:
                            d = 0
                            for j in range(self.need_start[e], self.need_start[e + 1]):
                                d += fl[self.need[j]]
                            if best < 0 or d < best_d:
                                best = e
                                best_d = d
                    sel.append(best)
                    for j in range(self.need_start[best], self.need_start[best + 1]):
                        f = self.need[j]
                        lay = fl[f]
                        if lay != 0 and marked[f] != i:
                            if not in_goal[f]:
                                gs_next[f] = -1
                                if gs_tail[lay] < 0:
                                    gs_head[lay] = f
                                else:
                                    gs_next[gs_tail[lay]] = f
                                gs_tail[lay] = f
                            in_goal[f] = 2
                    for q in range(self.imp_start[best], self.imp_start[best + 1]):
                        e = self.imp[q]
                        for j in range(self.add_start[e], self.add_start[e + 1]):
                            marked[self.add[j]] = i
                g = gs_next[g]
            layers[i - 1] = sel
        g1 = []
        if m >= 1:
            g = gs_head[1]
            while g >= 0:
                g1.append(g)
                g = gs_next[g]
        return layers, g1, carried

    def evaluate(self, state, goals):
        """``(h, layers, g1, carried)``; h is -1 and the rest None when unreachable."""
        cdef int h = 0, st, a
        if self._build(state, goals) < 0:
            return -1, None, None, None
        layers, g1, carried = self.extract(goals)
        for sel in layers:
            st = self._next_stamp()
            for e in sel:
                a = self.eff_action[<int> e]
                if self.act_stamp[a] != st:
                    self.act_stamp[a] = st
                    h += 1
        return h, layers, g1, carried

    def h_ff(self, state, goals):
        return self.evaluate(state, goals)[0]

    def h_add(self, state, goals):
        """Sum of additive fact weights, -1 if some goal has infinite weight."""
        cdef int nf = self.n_facts
        cdef int ne = self.n_effects
        cdef int *w = self.w
        cdef int *nw = self.nw
        cdef char *touched = self.touched
        cdef char *changed = self.changed
        cdef int i, k, e, f, s, x, any_touched = 1, total = 0
        for i in range(nf):
            w[i] = UNREACHED_C
        memset(touched, 0, ne + 1)
        for i in range(self.n_zero):
            touched[self.zero_need[i]] = 1
        for obj in state:
            f = obj
            w[f] = 0
        for obj in state:
            f = obj
            for k in range(self.cons_start[f], self.cons_start[f + 1]):
                touched[self.cons[k]] = 1
        while any_touched:
            for i in range(nf):
                nw[i] = w[i]
            memset(changed, 0, nf + 1)
            for e in range(ne):
                if not touched[e]:
                    continue
                s = 1
                for k in range(self.need_start[e], self.need_start[e + 1]):
                    x = w[self.need[k]]
                    if x == UNREACHED_C:
                        s = -1
                        break
                    s += x
                if s < 0:
                    continue
                for k in range(self.add_start[e], self.add_start[e + 1]):
                    f = self.add[k]
                    if s < nw[f]:
                        nw[f] = s
                        changed[f] = 1
            memset(touched, 0, ne + 1)
            any_touched = 0
            for f in range(nf):
                if changed[f]:
                    w[f] = nw[f]
                    for k in range(self.cons_start[f], self.cons_start[f + 1]):
                        touched[self.cons[k]] = 1
                        any_touched = 1
        for obj in goals:
            x = w[<int> obj]
            if x == UNREACHED_C:
                return -1
            total += x
        return total

    @property
    def weights(self):
        return [self.w[i] for i in range(self.n_facts)]
