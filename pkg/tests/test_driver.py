import csv
import io
import json
import random

import pytest

from increcolor import (Algorithm, ColoringState, GraphFamily, InsertionStatus,
                        OptimizerConfig, ParameterError, SizeLimitError,
                        SolveStatus, build_graph, generate,
                        generic_traversal_order, incremental_reoptimize,
                        run_totals, solvability_oracle, solve_to_proper,
                        worst_case_order)

N_ORACLE_TRIALS = 40


def test_run_stats_json_round_trip():
    g = generate(GraphFamily.path(12))
    order = generic_traversal_order(g, random.Random(3))
    cfg = OptimizerConfig(Algorithm.TAILORED_RLS, seed=9)
    stats, _ = incremental_reoptimize(g, order, cfg)
    decoded = json.loads(stats.to_json())
    assert decoded == json.loads(json.dumps(stats.to_dict()))
    assert decoded["n"] == 12 and decoded["m"] == 11
    assert decoded["seed"] == 9
    assert decoded["algorithm"] == "tailored_rls"
    assert len(decoded["per_insertion"]) == 11
    assert decoded["total_evaluations"] == stats.total_evaluations


def test_run_stats_csv_shape():
    g = generate(GraphFamily.star(8))
    order = generic_traversal_order(g, random.Random(1))
    cfg = OptimizerConfig(Algorithm.GENERIC_RLS, seed=4)
    stats, _ = incremental_reoptimize(g, order, cfg)
    text = stats.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == stats.CSV_HEADER.split(",")
    assert len(rows) == g.m + 1
    for i, row in enumerate(rows[1:]):
        assert int(row[0]) == i
        assert int(row[1]) == order.permutation[i]
        assert row[5] in {"proper", "timeout", "skipped"}
    total = sum(int(row[4]) for row in rows[1:])
    assert total == stats.total_evaluations


def test_seed_echo_allows_replay():
    g = generate(GraphFamily.toroid(4))
    order = generic_traversal_order(g, random.Random(8))
    first, _ = incremental_reoptimize(g, order,
                                      OptimizerConfig(Algorithm.TAILORED_RLS),
                                      rng=random.Random(5))
    again, _ = incremental_reoptimize(
        g, order, OptimizerConfig(Algorithm.TAILORED_RLS, seed=first.seed))
    assert first == again


def test_abort_skips_remaining_insertions():
    g = generate(GraphFamily.worst_case_tree(13))
    order = worst_case_order(g)
    timed_out = 0
    for seed in range(10):
        cfg = OptimizerConfig(Algorithm.TAILORED_RLS, seed=seed)
        stats, state = incremental_reoptimize(g, order, cfg, budget=1000)
        if stats.timeouts == 0:
            assert state.is_proper()
            continue
        timed_out += 1
        assert stats.timeouts == 1
        assert not stats.final_proper
        assert not state.is_proper()
        statuses = [r.status for r in stats.per_insertion]
        cut = statuses.index(InsertionStatus.TIMEOUT)
        assert all(s is InsertionStatus.PROPER for s in statuses[:cut])
        assert all(s is InsertionStatus.SKIPPED for s in statuses[cut + 1:])
        skipped = stats.per_insertion[cut + 1:]
        assert all(r.generations == 0 and r.evaluations == 0 for r in skipped)
    assert timed_out >= 5


def test_continue_on_timeout_processes_every_insertion():
    g = generate(GraphFamily.worst_case_tree(13))
    order = worst_case_order(g)
    for engine in ("fast", "reference"):
        cfg = OptimizerConfig(Algorithm.TAILORED_RLS, seed=0)
        stats, _ = incremental_reoptimize(g, order, cfg, budget=300,
                                          continue_on_timeout=True,
                                          engine=engine)
        statuses = {r.status for r in stats.per_insertion}
        assert InsertionStatus.SKIPPED not in statuses
        assert stats.timeouts >= 1
        timed = [r for r in stats.per_insertion if r.status is InsertionStatus.TIMEOUT]
        assert all(r.generations == 300 for r in timed)


def test_run_totals_matches_full_records():
    g = generate(GraphFamily.depth_k_star(25, 4))
    order = generic_traversal_order(g, random.Random(11))
    for engine in ("fast", "reference"):
        cfg = OptimizerConfig(Algorithm.TAILORED_RLS, seed=42)
        stats, _ = incremental_reoptimize(g, order, cfg, engine=engine)
        totals = run_totals(g, order, cfg, budget=10**6, engine=engine)
        assert totals.evaluations == stats.total_evaluations
        assert totals.generations == stats.total_generations
        assert totals.timeouts == stats.timeouts
        conflicted = [r for r in stats.per_insertion if r.conflict_introduced]
        assert totals.conflict_insertions == len(conflicted)
        assert totals.conflict_generations == sum(r.generations for r in conflicted)
        assert totals.final_proper


def test_run_totals_requires_seed():
    g = generate(GraphFamily.path(5))
    order = generic_traversal_order(g, random.Random(1))
    with pytest.raises(ParameterError):
        run_totals(g, order, OptimizerConfig(Algorithm.GENERIC_RLS), budget=100)


def test_driver_argument_validation():
    g = generate(GraphFamily.path(5))
    other = generate(GraphFamily.path(7))
    order = generic_traversal_order(other, random.Random(1))
    cfg = OptimizerConfig(Algorithm.GENERIC_RLS, seed=1)
    with pytest.raises(ParameterError):
        incremental_reoptimize(g, order, cfg)
    good = generic_traversal_order(g, random.Random(1))
    with pytest.raises(ParameterError):
        incremental_reoptimize(g, good, cfg, budget=0)
    with pytest.raises(ParameterError):
        incremental_reoptimize(g, good, cfg, engine="warp")


def test_oracle_trivial_cases():
    g = generate(GraphFamily.path(2))
    proper = solvability_oracle(g, [0, 1])
    assert proper.reachable_proper and proper.states_explored == 1
    verdict = solvability_oracle(g, [0, 0])
    assert verdict.reachable_proper
    assert verdict.states_explored >= 1


def test_oracle_accepts_coloring_state():
    g = generate(GraphFamily.path(3))
    state = ColoringState([0, 0, 1])
    for u, v in g.edges:
        state.insert_edge(u, v)
    assert solvability_oracle(g, state).reachable_proper


def test_oracle_detects_dead_end():
    # two settled two-leaf stars joined to a shared root: the root edge
    # conflict can only shuttle between the branches, never vanish
    g = generate(GraphFamily.worst_case_tree(7))
    dead = [0, 0, 1, 1, 1, 0, 0]
    verdict = solvability_oracle(g, dead)
    assert not verdict.reachable_proper
    assert verdict.states_explored == 2  # original and root-flipped twin
    alive = [0, 0, 0, 1, 1, 1, 1]
    assert solvability_oracle(g, alive).reachable_proper


def test_oracle_guards():
    g = generate(GraphFamily.path(21))
    with pytest.raises(SizeLimitError):
        solvability_oracle(g, [0] * 21)
    small = generate(GraphFamily.path(4))
    with pytest.raises(ParameterError):
        solvability_oracle(small, [0, 1])
    with pytest.raises(ParameterError):
        solvability_oracle(small, [0, 1, 2, 0])


def test_oracle_agrees_with_uniform_local_search():
    rng = random.Random(314)
    for _ in range(N_ORACLE_TRIALS):
        n = rng.randrange(4, 10)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.35]
        if not edges:
            edges = [(0, 1)]
        g = build_graph(n, edges)
        colors = [rng.randrange(2) for _ in range(n)]
        verdict = solvability_oracle(g, colors)
        assert 1 <= verdict.states_explored <= 2 ** n
        state = ColoringState(list(colors))
        for u, v in g.edges:
            state.insert_edge(u, v)
        if state.is_proper():
            assert verdict.reachable_proper
            continue
        cfg = OptimizerConfig(Algorithm.GENERIC_RLS)
        if verdict.reachable_proper:
            out = solve_to_proper(state, cfg, 10**6, random.Random(rng.getrandbits(32)))
            assert out.status is SolveStatus.PROPER
        else:
            out = solve_to_proper(state, cfg, 20_000, random.Random(rng.getrandbits(32)))
            assert out.status is SolveStatus.BUDGET_EXHAUSTED
            assert not state.is_proper()
