import os

import pytest
from hypothesis import HealthCheck, settings

from ffplan import build_task
from ffplan.bench import gen_blocksworld, gen_gripper
from ffplan.pddl import ground_texts

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def toy_task():
    """Two goals sharing one precondition: P enables G1 and G2."""
    return build_task(
        [
            ("opG1", ["P"], ["G1"], []),
            ("opG2", ["P"], ["G2"], []),
            ("opP", [], ["P"], []),
        ],
        [],
        ["G1", "G2"],
        name="toy",
    )


def helpful_trap_task():
    """Helpful actions prune every solution here."""
    return build_task(
        [
            ("opA1", [], ["A"], ["B"]),
            ("opA2", ["PA"], ["A"], []),
            ("opPA", [], ["PA"], []),
            ("opB1", [], ["B"], ["A"]),
            ("opB2", ["PB"], ["B"], []),
            ("opPB", [], ["PB"], []),
        ],
        ["B"],
        ["A", "B"],
        name="helpful-trap",
    )


def destroy_task():
    """Goal A must be destroyed once to reach B."""
    return build_task(
        [("opA", [], ["A"], []), ("opB", ["A"], ["B"], ["A"])],
        [],
        ["A", "B"],
        name="destroy",
    )


def label(task, aid):
    return task.actions[aid].label


def labels(task, plan):
    return [task.actions[a].label for a in plan]


@pytest.fixture
def toy():
    return toy_task()


@pytest.fixture
def trap():
    return helpful_trap_task()


@pytest.fixture
def destroy():
    return destroy_task()


@pytest.fixture(scope="session")
def gripper2():
    return ground_texts(*gen_gripper(2))


@pytest.fixture(scope="session")
def bw_para():
    return ground_texts(*gen_blocksworld("bw-para"))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, (ok, text) in sorted(test_acceptance.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {text}")
