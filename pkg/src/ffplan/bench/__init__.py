"""Benchmark generators, oracles, the configuration matrix and the sign test."""

from .generators import gen_blocksworld, gen_gripper, gen_logistics, lah, random_towers
from .matrix import (
    CSV_HEADER,
    Limits,
    RunRecord,
    parse_configs,
    records_csv,
    run_matrix,
    sign_summary,
    sign_summary_csv,
)
from .oracle import OracleBudgetExceeded, brute_force_optimal, brute_force_relaxed_optimal
from .randtask import random_task
from .stats import SIGNIFICANCE, paired_sign_test, sign_test, sign_test_exact
from .suite import SuiteEntry, SuiteError, SuiteSpec, parse_suite

__all__ = [
    "CSV_HEADER",
    "Limits",
    "OracleBudgetExceeded",
    "RunRecord",
    "SIGNIFICANCE",
    "SuiteEntry",
    "SuiteError",
    "SuiteSpec",
    "brute_force_optimal",
    "brute_force_relaxed_optimal",
    "gen_blocksworld",
    "gen_gripper",
    "gen_logistics",
    "lah",
    "paired_sign_test",
    "parse_configs",
    "parse_suite",
    "random_task",
    "random_towers",
    "records_csv",
    "run_matrix",
    "sign_summary",
    "sign_summary_csv",
    "sign_test",
    "sign_test_exact",
]
