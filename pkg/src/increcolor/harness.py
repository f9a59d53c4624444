"""Experiment sweeps: run repeated incremental reoptimizations over a grid of
graph families, summarize evaluation counts, and fit growth exponents.

Reproducibility contract: per-repetition seeds derive from
(master_seed, grid index, repetition index), so rerunning a sweep with the
same config yields byte-identical CSV output.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .driver import RunTotals, run_totals
from .errors import ParameterError
from .graphs import Graph, GraphFamily, family_from_dict, generate, longest_path
from .optimizers import Algorithm, OptimizerConfig
from .orders import (EdgeOrder, OrderKind, bfs_order, dfs_order,
                     generic_traversal_order, random_order, worst_case_order)

# Generous per-insertion cap: large enough that conflict random walks on
# desk-scale bipartite instances always finish, so a timeout under this
# default signals a genuinely stuck configuration.
DEFAULT_SWEEP_BUDGET = 10 ** 12

CSV_HEADER = "family,n,m,order,algorithm,lambda,seed,evaluations,generations,timeouts"


@dataclass(frozen=True)
class ExperimentConfig:
    """A sweep: one (order, algorithm) setting applied to a grid of families."""

    name: str
    families: tuple[GraphFamily, ...]
    order_kind: OrderKind
    algorithm: Algorithm
    lam: int | str = 1  # offspring / island count, or "star" for the adaptive rule
    order_start: int | None = None
    depth_greedy: bool = False
    repetitions: int = 100
    master_seed: int = 0
    budget: int = DEFAULT_SWEEP_BUDGET
    continue_on_timeout: bool = False
    engine: str = "fast"
    out_csv: str | None = None
    out_json: str | None = None

    def __post_init__(self) -> None:
        if not self.families:
            raise ParameterError("families grid must be nonempty")
        if self.repetitions < 1:
            raise ParameterError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.budget < 1:
            raise ParameterError(f"budget must be >= 1, got {self.budget}")
        if isinstance(self.lam, str):
            if self.lam != "star":
                raise ParameterError(f"lam must be a positive integer or 'star', got {self.lam!r}")
        elif self.lam < 1:
            raise ParameterError(f"lam must be >= 1, got {self.lam}")
        if self.engine not in ("fast", "reference"):
            raise ParameterError(f"unknown engine {self.engine!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "families": [f.to_dict() for f in self.families],
            "order_kind": self.order_kind.value,
            "algorithm": self.algorithm.value,
            "lam": self.lam,
            "order_start": self.order_start,
            "depth_greedy": self.depth_greedy,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "budget": self.budget,
            "continue_on_timeout": self.continue_on_timeout,
            "engine": self.engine,
            "out_csv": self.out_csv,
            "out_json": self.out_json,
        }

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        try:
            families = tuple(family_from_dict(f) for f in d["families"])
            return ExperimentConfig(
                name=str(d["name"]),
                families=families,
                order_kind=OrderKind(d["order_kind"]),
                algorithm=Algorithm(d["algorithm"]),
                lam=d.get("lam", 1),
                order_start=d.get("order_start"),
                depth_greedy=bool(d.get("depth_greedy", False)),
                repetitions=int(d.get("repetitions", 100)),
                master_seed=int(d.get("master_seed", 0)),
                budget=int(d.get("budget", DEFAULT_SWEEP_BUDGET)),
                continue_on_timeout=bool(d.get("continue_on_timeout", False)),
                engine=str(d.get("engine", "fast")),
                out_csv=d.get("out_csv"),
                out_json=d.get("out_json"),
            )
        except KeyError as exc:
            raise ParameterError(f"config is missing required field {exc.args[0]!r}") from exc
        except ValueError as exc:
            raise ParameterError(f"bad config value: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ExperimentConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ParameterError("config JSON must be an object")
        return ExperimentConfig.from_dict(d)


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    m: int
    order: str
    algorithm: str
    lam: int
    seed: int
    evaluations: int
    generations: int
    timeouts: int

    def to_csv_line(self) -> str:
        return (f"{self.family},{self.n},{self.m},{self.order},{self.algorithm},"
                f"{self.lam},{self.seed},{self.evaluations},{self.generations},"
                f"{self.timeouts}")


@dataclass(frozen=True)
class GridSummary:
    """Aggregates over the repetitions of one grid point."""

    family: str
    n: int
    m: int
    lam: int
    repetitions: int
    mean_evaluations: float
    median_evaluations: float
    stddev_evaluations: float
    mean_generations: float
    median_generations: float
    stddev_generations: float
    timeout_fraction: float  # fraction of repetitions with >= 1 timed-out insertion
    mean_conflict_insertions: float
    mean_walk_generations: float  # per-run generations per conflict-introducing insertion

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "lambda": self.lam,
            "repetitions": self.repetitions,
            "mean_evaluations": self.mean_evaluations,
            "median_evaluations": self.median_evaluations,
            "stddev_evaluations": self.stddev_evaluations,
            "mean_generations": self.mean_generations,
            "median_generations": self.median_generations,
            "stddev_generations": self.stddev_generations,
            "timeout_fraction": self.timeout_fraction,
            "mean_conflict_insertions": self.mean_conflict_insertions,
            "mean_walk_generations": self.mean_walk_generations,
        }


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    rows: tuple[SweepRow, ...]
    summaries: tuple[GridSummary, ...]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines.extend(r.to_csv_line() for r in self.rows)
        return "\n".join(lines) + "\n"

    def to_summary_json(self) -> str:
        doc = {
            "config": self.config.to_dict(),
            "summaries": [s.to_dict() for s in self.summaries],
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def derive_seeds(master_seed: int, grid_index: int, rep_index: int) -> tuple[int, int]:
    """Two independent 32-bit seeds (order seed, run seed) for one repetition."""
    ss = np.random.SeedSequence((master_seed, grid_index, rep_index))
    a, b = ss.generate_state(2)
    return int(a), int(b)


def make_order(g: Graph, kind: OrderKind, seed: int | None = None,
               start: int | None = None, depth_greedy: bool = False) -> EdgeOrder:
    if kind is OrderKind.BFS:
        return bfs_order(g, start=start, rng=seed)
    if kind is OrderKind.DFS:
        return dfs_order(g, start=start, rng=seed, depth_greedy=depth_greedy)
    if kind is OrderKind.GENERIC:
        return generic_traversal_order(g, rng=seed)
    if kind is OrderKind.WORST_CASE:
        return worst_case_order(g)
    if kind is OrderKind.UNIFORM_RANDOM:
        return random_order(g, rng=seed)
    raise ParameterError(f"unknown order kind {kind!r}")


def resolve_lam(cfg: ExperimentConfig, g: Graph) -> int:
    """Fixed offspring count, or the adaptive rule when lam == "star".

    The adaptive rule feeds the vertex count of the longest simple path
    (closed form for the family) into lambda_star.
    """
    if isinstance(cfg.lam, int):
        return cfg.lam
    return lambda_star(longest_path(g, mode="analytic") + 1, g.n, g.m)


def run_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Execute the sweep grid point by grid point, repetitions in order.

    Timeouts are recorded in the rows, never raised. Deterministic given
    cfg.master_seed.
    """
    rows: list[SweepRow] = []
    summaries: list[GridSummary] = []
    for gi, fam in enumerate(cfg.families):
        g = generate(fam)
        lam = resolve_lam(cfg, g)
        per_rep: list[RunTotals] = []
        for ri in range(cfg.repetitions):
            order_seed, run_seed = derive_seeds(cfg.master_seed, gi, ri)
            order = make_order(g, cfg.order_kind, seed=order_seed,
                               start=cfg.order_start, depth_greedy=cfg.depth_greedy)
            totals = run_totals(
                g, order,
                OptimizerConfig(cfg.algorithm, lam=lam, seed=run_seed),
                budget=cfg.budget,
                continue_on_timeout=cfg.continue_on_timeout,
                engine=cfg.engine)
            per_rep.append(totals)
            rows.append(SweepRow(
                family=fam.label(), n=g.n, m=g.m, order=cfg.order_kind.value,
                algorithm=cfg.algorithm.value, lam=lam, seed=run_seed,
                evaluations=totals.evaluations, generations=totals.generations,
                timeouts=totals.timeouts))
        summaries.append(_summarize(fam.label(), g, lam, per_rep))
    return SweepResult(cfg, tuple(rows), tuple(summaries))


def _summarize(label: str, g: Graph, lam: int, per_rep: Sequence[RunTotals]) -> GridSummary:
    evals = [t.evaluations for t in per_rep]
    gens = [t.generations for t in per_rep]
    walk = [t.conflict_generations / t.conflict_insertions if t.conflict_insertions else 0.0
            for t in per_rep]
    return GridSummary(
        family=label, n=g.n, m=g.m, lam=lam, repetitions=len(per_rep),
        mean_evaluations=statistics.fmean(evals),
        median_evaluations=float(statistics.median(evals)),
        stddev_evaluations=statistics.pstdev(evals),
        mean_generations=statistics.fmean(gens),
        median_generations=float(statistics.median(gens)),
        stddev_generations=statistics.pstdev(gens),
        timeout_fraction=sum(1 for t in per_rep if t.timeouts > 0) / len(per_rep),
        mean_conflict_insertions=statistics.fmean(t.conflict_insertions for t in per_rep),
        mean_walk_generations=statistics.fmean(walk),
    )


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares line through (log x, log y): log y = slope*log x + intercept."""

    slope: float
    intercept: float
    residual: float  # root-mean-square residual in log space


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> ExponentFit:
    """Ordinary least squares on log-log data, natural logarithms."""
    if len(xs) != len(ys):
        raise ParameterError("xs and ys must have equal length")
    if len(xs) < 3:
        raise ParameterError(f"exponent fit needs >= 3 points, got {len(xs)}")
    if any(x <= 0 for x in xs) or any(y <= 0 for y in ys):
        raise ParameterError("exponent fit needs strictly positive data")
    if len(set(xs)) < 2:
        raise ParameterError("degenerate grid: all x values equal")
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    coeffs, res, _rank, _sv, _rcond = np.polyfit(lx, ly, 1, full=True)
    rms = float(np.sqrt(res[0] / len(xs))) if res.size else 0.0
    return ExponentFit(slope=float(coeffs[0]), intercept=float(coeffs[1]), residual=rms)


def lambda_star(L: int, n: int, m: int) -> int:
    """Offspring count max(ceil(log2(L*n/m)), 1), computed in exact integer
    arithmetic: the smallest t with m * 2^t >= L*n, floored at 1."""
    for name, value in (("L", L), ("n", n), ("m", m)):
        if value < 1:
            raise ParameterError(f"{name} must be >= 1, got {value}")
    target = L * n
    t = 0
    while (m << t) < target:
        t += 1
    return max(t, 1)
