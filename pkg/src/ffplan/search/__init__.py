"""Local and global search over grounded tasks."""

from .agenda import GoalAgenda, compute_goal_agenda, goal_orderings
from .common import graph_for
from .config import (
    ALL8,
    EHC_FAILED,
    EXHAUSTED,
    SOLVED,
    UNSOLVABLE,
    SearchConfig,
    SearchOutcome,
    SearchStats,
)
from .ehc import added_goal_deletion_check, enforced_hill_climbing
from .gbfs import greedy_best_first
from .hc import hsp1_hill_climbing
from .solve import solve

__all__ = [
    "ALL8",
    "EHC_FAILED",
    "EXHAUSTED",
    "GoalAgenda",
    "SOLVED",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "UNSOLVABLE",
    "added_goal_deletion_check",
    "compute_goal_agenda",
    "enforced_hill_climbing",
    "goal_orderings",
    "graph_for",
    "greedy_best_first",
    "hsp1_hill_climbing",
    "solve",
]
