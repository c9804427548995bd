"""FF-style forward planner: PDDL frontend, relaxed planning graph heuristics,
enforced hill-climbing with pruning, and an ablation lab."""

from .task import (
    ConditionalEffect,
    GroundAction,
    InapplicableError,
    Plan,
    PlanError,
    State,
    Task,
    ValidationReport,
    applicable,
    apply,
    build_task,
    relax,
    validate_plan,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionalEffect",
    "GroundAction",
    "InapplicableError",
    "Plan",
    "PlanError",
    "State",
    "Task",
    "ValidationReport",
    "applicable",
    "apply",
    "build_task",
    "relax",
    "validate_plan",
]
