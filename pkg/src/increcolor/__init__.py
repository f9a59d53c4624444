"""Incremental reoptimization of 2-colorings on bipartite graphs.

Edges are inserted one at a time; after each insertion a randomized local
search variant repairs the coloring. The package bundles the graph families
and insertion orders used to study this process, exact and simulated
random-walk hitting-time oracles, a seed-deterministic run driver with two
distribution-equivalent engines, and a sweep harness that fits growth
exponents from repeated runs.
"""

from .coloring import ColoringState, FlipResult, IndexedSet, init_random_coloring
from .driver import (DEFAULT_BUDGET, InsertionRecord, InsertionStatus, RunStats,
                     RunTotals, SolvabilityVerdict, incremental_reoptimize,
                     run_totals, solvability_oracle)
from .errors import ContractError, GraphError, ParameterError, SizeLimitError
from .graphs import (FamilyKind, Graph, GraphFamily, GraphMetrics, build_graph,
                     compute_metrics, diameter, family_from_dict,
                     format_edge_list, generate, is_bipartite, longest_path,
                     parse_edge_list)
from .harness import (DEFAULT_SWEEP_BUDGET, ExperimentConfig, ExponentFit,
                      GridSummary, SweepResult, SweepRow, derive_seeds,
                      fit_exponent, lambda_star, make_order, resolve_lam,
                      run_sweep)
from .optimizers import (Algorithm, IslandSearch, OptimizerConfig, SolveOutcome,
                         SolveStatus, generic_rls_step, island_solve,
                         one_plus_lambda_step, solve_to_proper,
                         tailored_rls_step)
from .orders import (EdgeOrder, OrderKind, bfs_order, dfs_order, format_order,
                     generic_traversal_order, is_traversal_order, parse_order,
                     random_order, worst_case_order)
from .walks import (EXACT_K_CAP, MinWalkSummary, RandomWalkSpec, TailCheck,
                    WalkBoundary, check_tail_bound, exact_hitting_times,
                    expected_absorption_closed_form,
                    expected_two_sided_closed_form, simulate_min_of_eta,
                    tail_check_report)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "ColoringState",
    "ContractError",
    "DEFAULT_BUDGET",
    "DEFAULT_SWEEP_BUDGET",
    "EXACT_K_CAP",
    "EdgeOrder",
    "ExperimentConfig",
    "ExponentFit",
    "FamilyKind",
    "FlipResult",
    "Graph",
    "GraphError",
    "GraphFamily",
    "GraphMetrics",
    "GridSummary",
    "IndexedSet",
    "InsertionRecord",
    "InsertionStatus",
    "IslandSearch",
    "MinWalkSummary",
    "OptimizerConfig",
    "OrderKind",
    "ParameterError",
    "RandomWalkSpec",
    "RunStats",
    "RunTotals",
    "SizeLimitError",
    "SolvabilityVerdict",
    "SolveOutcome",
    "SolveStatus",
    "SweepResult",
    "SweepRow",
    "TailCheck",
    "WalkBoundary",
    "bfs_order",
    "build_graph",
    "check_tail_bound",
    "compute_metrics",
    "derive_seeds",
    "dfs_order",
    "diameter",
    "exact_hitting_times",
    "expected_absorption_closed_form",
    "expected_two_sided_closed_form",
    "family_from_dict",
    "fit_exponent",
    "format_edge_list",
    "format_order",
    "generate",
    "generic_rls_step",
    "generic_traversal_order",
    "incremental_reoptimize",
    "init_random_coloring",
    "is_bipartite",
    "is_traversal_order",
    "island_solve",
    "lambda_star",
    "longest_path",
    "make_order",
    "one_plus_lambda_step",
    "parse_edge_list",
    "parse_order",
    "random_order",
    "resolve_lam",
    "run_sweep",
    "run_totals",
    "simulate_min_of_eta",
    "solvability_oracle",
    "solve_to_proper",
    "tail_check_report",
    "tailored_rls_step",
    "worst_case_order",
]
