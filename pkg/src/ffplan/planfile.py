"""Plan files: one ``(name arg ...)`` per line, ``;`` starts a comment line."""

from __future__ import annotations

from .task import Plan, PlanError, Task


def format_plan(task: Task, plan: Plan) -> str:
    return "".join(task.actions[a].label + "\n" for a in plan)


def parse_plan(task: Task, text: str) -> Plan:
    labels = {a.label: a.id for a in task.actions}
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        label = " ".join(line.lower().replace("(", " ( ").replace(")", " ) ").split())
        label = label.replace("( ", "(").replace(" )", ")")
        if label not in labels:
            raise PlanError(f"line {lineno}: unknown action {line}")
        steps.append(labels[label])
    return Plan(tuple(steps))
