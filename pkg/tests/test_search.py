import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffplan import apply, build_task, validate_plan
from ffplan.bench import brute_force_optimal, gen_blocksworld, gen_gripper, gen_logistics, random_task
from ffplan.heuristic import Evaluator
from ffplan.pddl import ground_texts
from ffplan.search import (
    EHC_FAILED,
    EXHAUSTED,
    SOLVED,
    UNSOLVABLE,
    SearchConfig,
    added_goal_deletion_check,
    compute_goal_agenda,
    enforced_hill_climbing,
    goal_orderings,
    graph_for,
    greedy_best_first,
    hsp1_hill_climbing,
    solve,
)

from .conftest import labels

BARE = SearchConfig(helpful=False, agd=False, agenda=False, fallback=False)


def _names(task, goals):
    return tuple(task.facts[g] for g in goals)


# --------------------------------------------------------------- ehc


def test_ehc_gripper_two_balls(gripper2):
    task, _ = gripper2
    out = enforced_hill_climbing(task, config=SearchConfig())
    assert out.status == SOLVED and len(out.plan) == 5
    assert validate_plan(task, out.plan).valid


def test_ehc_helpful_trap_fails(trap):
    out = enforced_hill_climbing(trap, config=BARE.with_(helpful=True))
    assert out.status == EHC_FAILED
    assert out.fail_reason == "breadth-first search exhausted"


def test_ehc_without_helpful_solves_trap(trap):
    out = enforced_hill_climbing(trap, config=BARE)
    assert out.solved and validate_plan(trap, out.plan).valid


def test_ehc_agd_destroy_fails(destroy):
    out = enforced_hill_climbing(destroy, config=BARE.with_(agd=True))
    assert out.status == EHC_FAILED


def test_ehc_destroy_without_agd(destroy):
    out = enforced_hill_climbing(destroy, config=BARE)
    assert out.solved and labels(destroy, out.plan) == ["(opA)", "(opB)", "(opA)"]


def test_ehc_goals_already_true():
    task = build_task([("op", [], ["A"], [])], ["A"], ["A"])
    out = enforced_hill_climbing(task)
    assert out.solved and len(out.plan) == 0


def test_ehc_dead_start_reports_dead_end():
    task = build_task([("op", ["C"], ["A"], [])], ["C"], ["A", "B"])
    out = enforced_hill_climbing(task, config=BARE)
    assert out.status == EHC_FAILED and out.fail_reason.startswith("dead end")


def test_ehc_evaluation_budget(gripper2):
    task, _ = gripper2
    out = enforced_hill_climbing(task, config=BARE.with_(max_evaluations=2))
    assert out.status == EXHAUSTED and out.fail_reason == "evaluation limit"


@pytest.mark.parametrize(
    "texts", [gen_gripper(5), gen_logistics(2, 3, 4), gen_blocksworld(6, 1, 3)],
    ids=["gripper", "logistics", "bw3"],
)
def test_ehc_anchor_values_strictly_decrease(texts):
    task, _ = ground_texts(*texts)
    out = enforced_hill_climbing(task, config=BARE)
    assert out.solved
    h = out.stats.anchor_h
    assert h[-1] == 0 and all(a > b for a, b in zip(h, h[1:]))
    assert out.stats.ehc_iterations == len(h) - 1


# --------------------------------------------------------------- added goal deletion


def test_agd_check_on_destroy(destroy):
    graph = graph_for(destroy)
    op_a = destroy.actions[0]
    child = destroy.state(["A"])
    ev = Evaluator(graph)(child, destroy.goals)
    assert added_goal_deletion_check(graph, destroy.initial, op_a, child, ev, destroy.goals)
    assert added_goal_deletion_check(graph, destroy.initial, op_a, child, ev.plan, destroy.goals)
    # no goal added, nothing to protect
    assert not added_goal_deletion_check(graph, child, op_a, child, ev, destroy.goals)


def test_agd_blocksworld_prunes_stack_a_b(bw_para):
    task, graph = bw_para
    s = task.state(["(holding a)", "(ontable b)", "(ontable c)", "(clear b)", "(clear c)"])
    stack = task.find_action("(stack a b)")
    child = apply(s, stack)
    ev = Evaluator(graph)(child, task.goals)
    # on(b, c) still needs a to move off b again
    assert added_goal_deletion_check(graph, s, stack, child, ev, task.goals)


def test_agd_counts_conditional_deletes():
    # the selected effect deletes nothing itself, but the implied unconditional one does
    task = build_task(
        [
            ("opA", [], ["A"], []),
            ("opC", [], ["C"], []),
            ("opB", [], [((), [], ["A"]), (["C"], ["B"], [])]),
        ],
        [],
        ["A", "B"],
    )
    graph = graph_for(task)
    child = task.state(["A"])
    ev = Evaluator(graph)(child, task.goals)
    assert added_goal_deletion_check(graph, task.initial, task.actions[0], child, ev, task.goals)


# --------------------------------------------------------------- goal agenda


def test_agenda_destroy(destroy):
    agenda = compute_goal_agenda(destroy)
    assert [_names(destroy, e) for e in agenda.entries] == [("B",), ("A",)]
    assert [_names(destroy, c) for c in agenda.cumulative()] == [("B",), ("B", "A")]


def test_agenda_gripper_single_entry(gripper2):
    task, _ = gripper2
    agenda = compute_goal_agenda(task)
    assert len(agenda) == 1 and agenda.entries[0] == tuple(task.goals)
    assert goal_orderings(task) == []


def test_agenda_merges_mutual_conflicts():
    task = build_task(
        [("x", [], ["X"], ["Y"]), ("y", [], ["Y"], ["X"]), ("z", [], ["Z"], ["X"])],
        [],
        ["Z", "Y", "X"],
    )
    agenda = compute_goal_agenda(task)
    assert [_names(task, e) for e in agenda.entries] == [("Z",), ("Y", "X")]


def test_agenda_flags_goal_without_achiever():
    task = build_task([("x", [], ["X"], [])], [], ["X", "Q"])
    assert compute_goal_agenda(task).unsolvable


def test_agenda_blocksworld_has_no_direct_conflict(bw_para):
    # stacking never deletes another on-goal, so only direct conflicts leave one entry
    task, _ = bw_para
    assert compute_goal_agenda(task).entries == (tuple(task.goals),)


# --------------------------------------------------------------- greedy best-first


def test_gbfs_trap(trap):
    out = greedy_best_first(trap, config=BARE.with_(strategy="gbfs"))
    assert out.solved and labels(trap, out.plan) == ["(opPA)", "(opA2)"]


def test_gbfs_toy(toy):
    out = greedy_best_first(toy)
    assert out.solved and len(out.plan) == 3


def test_gbfs_exhausts_finite_space():
    task = build_task([("a", [], ["A"], ["B"]), ("b", [], ["B"], ["A"])], [], ["A", "B"])
    out = greedy_best_first(task)
    assert out.status == UNSOLVABLE


def test_gbfs_relaxed_dead_start():
    task = build_task([("op", ["C"], ["A"], [])], ["C"], ["A", "B"])
    assert greedy_best_first(task).status == UNSOLVABLE


@given(st.integers(0, 10**6))
def test_gbfs_agrees_with_oracle_on_solvability(seed):
    task = random_task(random.Random(seed))
    opt = brute_force_optimal(task)
    out = greedy_best_first(task)
    assert out.solved == (opt is not None)
    if out.solved:
        assert validate_plan(task, out.plan).valid
        assert len(out.plan) >= opt[0]


# --------------------------------------------------------------- hill-climbing


def test_hc_toy(toy):
    out = hsp1_hill_climbing(toy, config=BARE.with_(strategy="hc"))
    assert out.solved and len(out.plan) == 3


def test_hc_is_deterministic_per_seed():
    task, _ = ground_texts(*gen_blocksworld(5, 3))
    runs = [
        hsp1_hill_climbing(task, config=BARE.with_(strategy="hc", heuristic="add", seed=s))
        for s in (7, 7, 8)
    ]
    assert runs[0].solved and runs[0].plan == runs[1].plan
    assert runs[0].stats.evaluations == runs[1].stats.evaluations


def test_hc_dead_start_is_exhausted():
    task = build_task([("op", ["C"], ["A"], [])], ["C"], ["A", "B"])
    out = hsp1_hill_climbing(task, config=BARE.with_(strategy="hc"))
    assert out.status == EXHAUSTED


def test_hc_restart_cap():
    # every move is a dead end or a loop, so trials end and restart until the cap
    task = build_task([("a", [], ["A"], ["B"]), ("b", [], ["B"], ["A"])], [], ["A", "B"])
    out = hsp1_hill_climbing(task, config=BARE.with_(strategy="hc", max_restarts=3))
    assert out.status == EXHAUSTED and out.stats.restarts == 3


# --------------------------------------------------------------- overall strategy


def test_solve_trap_through_fallback(trap):
    out = solve(trap)
    assert out.solved and out.phase == "gbfs-fallback"
    assert labels(trap, out.plan) == ["(opPA)", "(opA2)"]


def test_solve_without_fallback_reports_ehc_failure(trap):
    assert solve(trap, SearchConfig(fallback=False)).status == EHC_FAILED


def test_solve_destroy_with_agenda(destroy):
    out = solve(destroy)
    assert out.solved and out.phase == "ehc"
    assert labels(destroy, out.plan) == ["(opA)", "(opB)", "(opA)"]


def test_solve_empty_plan_for_true_goals():
    task = build_task([("op", [], ["A"], [])], ["A"], ["A"])
    out = solve(task)
    assert out.solved and len(out.plan) == 0 and out.phase == "initial"


def test_solve_unreachable_is_unsolvable():
    task = build_task([("op", ["C"], ["A"], [])], ["C"], ["A", "B"])
    assert solve(task).status == UNSOLVABLE
    assert solve(task, SearchConfig(strategy="hc")).status in (UNSOLVABLE, EXHAUSTED)


def test_solve_bw_para_orders_lower_stack_first(bw_para):
    task, _ = bw_para
    out = solve(task)
    assert out.solved
    steps = labels(task, out.plan)
    assert steps.index("(stack b c)") < steps.index("(stack a b)")


def test_trace_log_records_expansions(bw_para):
    task, _ = bw_para
    off = solve(task, SearchConfig(agd=False, agenda=False, trace=True))
    on = solve(task, SearchConfig(agd=True, agenda=False, trace=True))
    stack_ab = task.find_action("(stack a b)").id
    assert ("expand", stack_ab) in off.log
    assert ("prune", stack_ab) in on.log


def test_solve_is_deterministic():
    task, _ = ground_texts(*gen_logistics(2, 3, 7))
    for cfg in (SearchConfig(), SearchConfig(strategy="hc", seed=3), SearchConfig(strategy="gbfs")):
        a, b = solve(task, cfg), solve(task, cfg)
        assert a.plan == b.plan and a.stats.evaluations == b.stats.evaluations


@pytest.mark.parametrize(
    "texts", [gen_gripper(4), gen_gripper(7), gen_logistics(2, 2, 0), gen_logistics(2, 3, 3)],
    ids=["g4", "g7", "log22", "log23"],
)
def test_helpful_pruning_keeps_dead_end_free_tasks_solvable(texts):
    task, _ = ground_texts(*texts)
    results = [
        enforced_hill_climbing(task, config=BARE.with_(helpful=h)).solved for h in (True, False)
    ]
    assert results == [True, True]


def test_config_letters():
    assert SearchConfig().letters == "HEF"
    cfg = SearchConfig.from_letters("-E-")
    assert (cfg.helpful, cfg.strategy, cfg.heuristic) == (False, "ehc", "add")
    assert not (cfg.agd or cfg.agenda or cfg.fallback)
    for bad in ("HE", "XEF", "EHF"):
        with pytest.raises(ValueError):
            SearchConfig.from_letters(bad)
    with pytest.raises(ValueError):
        SearchConfig(strategy="astar")
