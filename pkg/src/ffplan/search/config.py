from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from ..task import Plan

SOLVED = "solved"
EHC_FAILED = "ehc_failed"
UNSOLVABLE = "unsolvable"
EXHAUSTED = "resource_exhausted"


@dataclass(frozen=True)
class SearchConfig:
    heuristic: str = "ff"
    strategy: str = "ehc"
    helpful: bool = True
    agd: bool = True
    agenda: bool = True
    fallback: bool = True
    seed: int = 0
    max_evaluations: int | None = None
    max_seconds: float | None = None
    # hill-climbing restarts before giving up when no other limit is set
    max_restarts: int = 1000
    trace: bool = False

    def __post_init__(self) -> None:
        if self.heuristic not in ("ff", "add"):
            raise ValueError(f"heuristic must be ff or add, not {self.heuristic!r}")
        if self.strategy not in ("ehc", "hc", "gbfs"):
            raise ValueError(f"strategy must be ehc, hc or gbfs, not {self.strategy!r}")

    @property
    def letters(self) -> str:
        """Three-letter switch name: H (helpful), E (ehc), F (h_ff), '-' when off."""
        return (
            ("H" if self.helpful else "-")
            + ("E" if self.strategy == "ehc" else "-")
            + ("F" if self.heuristic == "ff" else "-")
        )

    @classmethod
    def from_letters(cls, letters: str, **kw) -> "SearchConfig":
        if len(letters) != 3 or any(c not in "HEF-" for c in letters):
            raise ValueError(f"bad configuration letters {letters!r}")
        if letters[0] not in "H-" or letters[1] not in "E-" or letters[2] not in "F-":
            raise ValueError(f"bad configuration letters {letters!r}")
        base = dict(agd=False, agenda=False, fallback=False)
        base.update(kw)
        return cls(
            heuristic="ff" if letters[2] == "F" else "add",
            strategy="ehc" if letters[1] == "E" else "hc",
            helpful=letters[0] == "H",
            **base,
        )

    def with_(self, **kw) -> "SearchConfig":
        return replace(self, **kw)


ALL8 = tuple(h + e + f for h in "H-" for e in "E-" for f in "F-")


@dataclass
class SearchStats:
    evaluations: int = 0
    expansions: int = 0
    max_bfs_depth: int = 0
    ehc_iterations: int = 0
    restarts: int = 0
    elapsed: float = 0.0
    max_rpg_layers: int = 0
    anchor_h: list = field(default_factory=list)


@dataclass
class SearchOutcome:
    status: str
    plan: Plan | None
    stats: SearchStats
    fail_reason: str = ""
    final_state: frozenset | None = None
    # ("expand" | "prune", action id that produced the state) when tracing
    log: list = field(default_factory=list)
    phase: str = ""

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


class Exhausted(Exception):
    pass


class Budget:
    def __init__(self, config: SearchConfig, evaluator) -> None:
        self.evaluator = evaluator
        self.max_evals = config.max_evaluations
        self.deadline = (
            None if config.max_seconds is None else time.monotonic() + config.max_seconds
        )

    def check(self) -> None:
        if self.max_evals is not None and self.evaluator.evaluations >= self.max_evals:
            raise Exhausted("evaluation limit")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Exhausted("time limit")
