"""Incremental reoptimization: insert edges one at a time, re-optimizing after
each insertion until the coloring is proper or a per-insertion generation
budget runs out.

Two engines produce the same distributions and accounting: "reference" runs
the pure-Python optimizer steps, "fast" runs the jitted engine. Both are
deterministic given the run seed; their PRNG streams differ, so individual
runs are reproducible per engine, not across engines.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import _kernels
from .coloring import ColoringState, init_random_coloring
from .errors import ContractError, ParameterError, SizeLimitError
from .graphs import Graph
from .optimizers import (Algorithm, OptimizerConfig, SolveStatus, solve_to_proper)
from .orders import EdgeOrder

DEFAULT_BUDGET = 10 ** 6

_ALG_CODES = {
    Algorithm.GENERIC_RLS: _kernels.ALG_GENERIC,
    Algorithm.TAILORED_RLS: _kernels.ALG_TAILORED,
    Algorithm.ONE_PLUS_LAMBDA: _kernels.ALG_ONE_PLUS_LAMBDA,
    Algorithm.ISLAND: _kernels.ALG_ISLAND,
}


class InsertionStatus(str, Enum):
    PROPER = "proper"
    TIMEOUT = "timeout"
    SKIPPED = "skipped"  # after an earlier timeout aborted the run


@dataclass(frozen=True)
class InsertionRecord:
    edge: int
    conflict_introduced: bool
    generations: int
    evaluations: int
    status: InsertionStatus


@dataclass(frozen=True)
class RunStats:
    """Per-insertion accounting plus run totals and the configuration echo."""

    per_insertion: tuple[InsertionRecord, ...]
    total_generations: int
    total_evaluations: int
    timeouts: int
    final_proper: bool
    seed: int
    algorithm: Algorithm
    lam: int
    budget: int
    continue_on_timeout: bool
    order_kind: str
    engine: str
    n: int
    m: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "seed": self.seed,
            "algorithm": self.algorithm.value,
            "lambda": self.lam,
            "budget": self.budget,
            "continue_on_timeout": self.continue_on_timeout,
            "order_kind": self.order_kind,
            "engine": self.engine,
            "total_generations": self.total_generations,
            "total_evaluations": self.total_evaluations,
            "timeouts": self.timeouts,
            "final_proper": self.final_proper,
            "per_insertion": [
                {
                    "edge": r.edge,
                    "conflict_introduced": r.conflict_introduced,
                    "generations": r.generations,
                    "evaluations": r.evaluations,
                    "status": r.status.value,
                }
                for r in self.per_insertion
            ],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    CSV_HEADER = "step,edge,conflict_introduced,generations,evaluations,status"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER.split(","))
        for i, r in enumerate(self.per_insertion):
            writer.writerow([i, r.edge, int(r.conflict_introduced), r.generations,
                             r.evaluations, r.status.value])
        return buf.getvalue()


def _validate_order(g: Graph, order: EdgeOrder) -> None:
    if sorted(order.permutation) != list(range(g.m)):
        raise ParameterError("order is not a permutation of the graph's edge indices")


def _resolve_seed(cfg: OptimizerConfig, rng: random.Random | None) -> int:
    if cfg.seed is not None:
        return cfg.seed
    if rng is not None:
        return rng.getrandbits(32)
    return random.getrandbits(32)


def _run_fast(g: Graph, order: EdgeOrder, cfg: OptimizerConfig, budget: int,
              seed: int, continue_on_timeout: bool):
    eu = np.fromiter((e[0] for e in g.edges), dtype=np.int64, count=g.m)
    ev = np.fromiter((e[1] for e in g.edges), dtype=np.int64, count=g.m)
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for v in range(g.n):
        indptr[v + 1] = indptr[v] + g.degree(v)
    perm = np.fromiter(order.permutation, dtype=np.int64, count=g.m)
    return _kernels.ir_run(g.n, eu, ev, indptr, perm,
                           _ALG_CODES[cfg.algorithm], cfg.lam, budget,
                           seed & 0xFFFFFFFF, continue_on_timeout)


_STATUS_FROM_CODE = {
    _kernels.STATUS_NO_CONFLICT: InsertionStatus.PROPER,
    _kernels.STATUS_SOLVED: InsertionStatus.PROPER,
    _kernels.STATUS_TIMEOUT: InsertionStatus.TIMEOUT,
    _kernels.STATUS_SKIPPED: InsertionStatus.SKIPPED,
}


def incremental_reoptimize(g: Graph, order: EdgeOrder, cfg: OptimizerConfig,
                           budget: int = DEFAULT_BUDGET,
                           rng: random.Random | None = None,
                           continue_on_timeout: bool = False,
                           engine: str = "fast") -> tuple[RunStats, ColoringState]:
    """Run one incremental reoptimization over the given insertion order.

    Starts from a uniform random coloring of isolated vertices. After each
    insertion the configured optimizer runs until the coloring is proper or
    `budget` generations pass; on a timeout the run aborts (remaining
    insertions are recorded as skipped) unless continue_on_timeout is set.

    The run seed comes from cfg.seed when present, else it is drawn from
    `rng` (or the module rng) and echoed in RunStats.seed for replay.
    """
    _validate_order(g, order)
    if budget < 1:
        raise ParameterError(f"budget must be >= 1, got {budget}")
    if engine not in ("fast", "reference"):
        raise ParameterError(f"unknown engine {engine!r}")
    seed = _resolve_seed(cfg, rng)

    if engine == "fast":
        (ci, gens, evals, status_codes, colors, final_conflicts,
         aborted_at) = _run_fast(g, order, cfg, budget, seed, continue_on_timeout)
        records = tuple(
            InsertionRecord(
                edge=int(order.permutation[i]),
                conflict_introduced=bool(ci[i]),
                generations=int(gens[i]),
                evaluations=int(evals[i]),
                status=_STATUS_FROM_CODE[int(status_codes[i])],
            )
            for i in range(g.m)
        )
        state = ColoringState([int(c) for c in colors])
        upto = g.m if aborted_at < 0 else int(aborted_at) + 1
        for i in range(upto):
            u, v = g.edges[order.permutation[i]]
            state.insert_edge(u, v)
        if state.conflict_count != int(final_conflicts):
            raise ContractError("engine disagreement on final conflict count")
        state.evaluations = int(evals.sum())
    else:
        r = random.Random(seed)
        state = init_random_coloring(g.n, r)
        records_list: list[InsertionRecord] = []
        aborted = False
        for e in order.permutation:
            if aborted:
                records_list.append(InsertionRecord(int(e), False, 0, 0,
                                                    InsertionStatus.SKIPPED))
                continue
            u, v = g.edges[e]
            introduced = state.insert_edge(u, v)
            if state.is_proper():
                state.evaluations += 1
                records_list.append(InsertionRecord(int(e), introduced, 0, 1,
                                                    InsertionStatus.PROPER))
                continue
            outcome = solve_to_proper(state, cfg, budget, r)
            ok = outcome.status is SolveStatus.PROPER
            records_list.append(InsertionRecord(
                int(e), introduced, outcome.generations, outcome.evaluations,
                InsertionStatus.PROPER if ok else InsertionStatus.TIMEOUT))
            if not ok and not continue_on_timeout:
                aborted = True
        records = tuple(records_list)

    stats = RunStats(
        per_insertion=records,
        total_generations=sum(r.generations for r in records),
        total_evaluations=sum(r.evaluations for r in records),
        timeouts=sum(1 for r in records if r.status is InsertionStatus.TIMEOUT),
        final_proper=state.is_proper(),
        seed=seed,
        algorithm=cfg.algorithm,
        lam=cfg.lam,
        budget=budget,
        continue_on_timeout=continue_on_timeout,
        order_kind=order.kind.value,
        engine=engine,
        n=g.n,
        m=g.m,
    )
    return stats, state


@dataclass(frozen=True)
class RunTotals:
    """Compact per-run accounting used by sweeps (no per-insertion records)."""

    evaluations: int
    generations: int
    timeouts: int
    conflict_insertions: int
    conflict_generations: int
    final_proper: bool


def run_totals(g: Graph, order: EdgeOrder, cfg: OptimizerConfig, budget: int,
               continue_on_timeout: bool = False, engine: str = "fast") -> RunTotals:
    """Like incremental_reoptimize but returns only aggregate counters, which
    keeps large sweeps free of per-insertion record objects."""
    _validate_order(g, order)
    if cfg.seed is None:
        raise ParameterError("run_totals requires an explicit cfg.seed")
    if engine == "fast":
        (ci, gens, evals, status_codes, _colors, final_conflicts,
         _aborted_at) = _run_fast(g, order, cfg, budget, cfg.seed, continue_on_timeout)
        ci = ci.astype(bool)
        return RunTotals(
            evaluations=int(evals.sum()),
            generations=int(gens.sum()),
            timeouts=int((status_codes == _kernels.STATUS_TIMEOUT).sum()),
            conflict_insertions=int(ci.sum()),
            conflict_generations=int(gens[ci].sum()),
            final_proper=bool(final_conflicts == 0),
        )
    stats, state = incremental_reoptimize(g, order, cfg, budget=budget,
                                          continue_on_timeout=continue_on_timeout,
                                          engine="reference")
    conflicted = [r for r in stats.per_insertion if r.conflict_introduced]
    return RunTotals(
        evaluations=stats.total_evaluations,
        generations=stats.total_generations,
        timeouts=stats.timeouts,
        conflict_insertions=len(conflicted),
        conflict_generations=sum(r.generations for r in conflicted),
        final_proper=state.is_proper(),
    )


@dataclass(frozen=True)
class SolvabilityVerdict:
    reachable_proper: bool
    states_explored: int


SOLVABILITY_VERTEX_CAP = 20


def solvability_oracle(g: Graph, coloring: Sequence[int] | ColoringState) -> SolvabilityVerdict:
    """Exhaustively decide whether a proper coloring of g is reachable from
    the given coloring through single flips that never increase the conflict
    count (breadth-first search over the coloring space; n <= 20)."""
    if g.n > SOLVABILITY_VERTEX_CAP:
        raise SizeLimitError(
            f"solvability_oracle is capped at n <= {SOLVABILITY_VERTEX_CAP}, got n={g.n}")
    colors = list(coloring.colors) if isinstance(coloring, ColoringState) else list(coloring)
    if len(colors) != g.n or any(c not in (0, 1) for c in colors):
        raise ParameterError("coloring must assign 0/1 to each of the graph's vertices")
    nb = [0] * g.n
    for u, v in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    full = (1 << g.n) - 1
    deg = [g.degree(v) for v in range(g.n)]

    def conf_at(mask: int, v: int) -> int:
        same = mask if (mask >> v) & 1 else ~mask & full
        return (nb[v] & same).bit_count()

    def is_proper_mask(mask: int) -> bool:
        return all(((mask >> u) & 1) != ((mask >> v) & 1) for u, v in g.edges)

    start = sum(c << i for i, c in enumerate(colors))
    seen = {start}
    frontier = [start]
    explored = 0
    while frontier:
        nxt: list[int] = []
        for mask in frontier:
            explored += 1
            if is_proper_mask(mask):
                return SolvabilityVerdict(True, explored)
            for v in range(g.n):
                if deg[v] - 2 * conf_at(mask, v) <= 0:
                    child = mask ^ (1 << v)
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
        frontier = nxt
    return SolvabilityVerdict(False, explored)
