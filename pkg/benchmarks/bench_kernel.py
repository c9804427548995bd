"""Compare the compiled and pure-Python heuristic kernels on generated tasks.

    python3 benchmarks/bench_kernel.py --states 300 --repeat 3

Both kernels evaluate the same states (collected by a seeded random walk);
the script checks that their answers agree before reporting timings.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from ffplan import apply
from ffplan.bench import gen_blocksworld, gen_gripper, gen_logistics
from ffplan.heuristic._pykernel import PyKernel
from ffplan.pddl import ground_texts

try:
    from ffplan.heuristic._ckernel import CKernel
except ImportError:
    CKernel = None

INSTANCES = {
    "gripper-20": lambda: gen_gripper(20),
    "bw4-12": lambda: gen_blocksworld(12, 3),
    "bw3-12": lambda: gen_blocksworld(12, 3, 3),
    "logistics-3-8": lambda: gen_logistics(3, 8, 2),
}


def walk(task, n, seed):
    rng = random.Random(seed)
    states = [task.initial]
    s = task.initial
    while len(states) < n:
        options = [a for a in task.actions if a.pre <= s]
        if not options:
            s = task.initial
            continue
        s = apply(s, rng.choice(options))
        states.append(s)
    return states


def clock(kernel, method, states, goals, repeat):
    fn = getattr(kernel, method)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for s in states:
            fn(s, goals)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if CKernel is None:
        print("compiled kernel not built; run pip install -e . --no-build-isolation")
        return 1

    print(f"{'instance':<16}{'facts':>7}{'acts':>7}{'method':>9}"
          f"{'python us':>12}{'compiled us':>13}{'speedup':>9}")
    for name, make in INSTANCES.items():
        task, graph = ground_texts(*make())
        goals = tuple(task.goals)
        states = walk(task, args.states, args.seed)
        py, c = PyKernel(graph), CKernel(graph)
        for s in states:
            if py.evaluate(s, goals) != c.evaluate(s, goals):
                print(f"{name}: kernels disagree on {task.atoms(s)}", file=sys.stderr)
                return 2
            if py.h_add(s, goals) != c.h_add(s, goals):
                print(f"{name}: h_add disagrees on {task.atoms(s)}", file=sys.stderr)
                return 2
        for method in ("evaluate", "h_add"):
            tp = clock(py, method, states, goals, args.repeat)
            tc = clock(c, method, states, goals, args.repeat)
            per = 1e6 / len(states)
            print(f"{name:<16}{len(task.facts):>7}{len(task.actions):>7}{method:>9}"
                  f"{tp * per:>12.1f}{tc * per:>13.1f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
