from .grounding import ConnectivityGraph, build_connectivity, detect_statics, ground, ground_texts
from .parser import LiftedTask, PDDLError, parse, parse_domain, parse_problem

__all__ = [
    "ConnectivityGraph",
    "LiftedTask",
    "PDDLError",
    "build_connectivity",
    "detect_statics",
    "ground",
    "ground_texts",
    "parse",
    "parse_domain",
    "parse_problem",
]
