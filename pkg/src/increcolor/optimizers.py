"""Randomized local search variants over a ColoringState.

All variants are elitist: a step never increases the conflict count of the
surviving search point. Evaluation accounting: single-trajectory variants
charge 1 fitness evaluation per step, offspring and island variants charge
lambda per generation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .coloring import ColoringState
from .errors import ContractError, ParameterError


class Algorithm(str, Enum):
    GENERIC_RLS = "generic_rls"
    TAILORED_RLS = "tailored_rls"
    ONE_PLUS_LAMBDA = "one_plus_lambda"
    ISLAND = "island"


class SolveStatus(str, Enum):
    PROPER = "proper"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class OptimizerConfig:
    algorithm: Algorithm
    lam: int = 1  # offspring count / island count, written "lambda" in output tables
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ParameterError(f"lambda must be >= 1, got {self.lam}")


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    generations: int
    evaluations: int


def generic_rls_step(state: ColoringState, rng: random.Random) -> bool:
    """Flip a uniformly random vertex iff that does not increase the conflict
    count. Returns whether the flip was applied. Costs one evaluation."""
    v = rng.randrange(state.n)
    accepted = state.flip_delta(v) <= 0
    if accepted:
        state.apply_flip(v)
    state.evaluations += 1
    return accepted


def tailored_rls_step(state: ColoringState, rng: random.Random) -> bool:
    """Like generic_rls_step but the vertex is drawn uniformly from the
    vertices touching a conflicting edge. Calling it on a proper coloring is a
    contract violation."""
    if state.is_proper():
        raise ContractError("tailored step requires at least one conflict")
    v = state.sample_conflicting_vertex(rng)
    accepted = state.flip_delta(v) <= 0
    if accepted:
        state.apply_flip(v)
    state.evaluations += 1
    return accepted


def one_plus_lambda_step(state: ColoringState, lam: int, rng: random.Random) -> bool:
    """One generation of the offspring variant: lam offspring, each the parent
    with one tailored flip (duplicates allowed); the offspring with the fewest
    conflicts (ties uniform) replaces the parent iff not worse. Costs lam
    evaluations."""
    if lam < 1:
        raise ParameterError(f"lambda must be >= 1, got {lam}")
    if state.is_proper():
        raise ContractError("offspring step requires at least one conflict")
    cands = [state.sample_conflicting_vertex(rng) for _ in range(lam)]
    deltas = [state.flip_delta(v) for v in cands]
    state.evaluations += lam
    best = min(deltas)
    if best > 0:
        return False
    winners = [i for i, d in enumerate(deltas) if d == best]
    choice = winners[0] if len(winners) == 1 else winners[rng.randrange(len(winners))]
    state.apply_flip(cands[choice])
    return True


class IslandSearch:
    """lam island copies of one conflicted state, advancing in lockstep.

    Each generation every island takes one tailored step on its own PRNG
    stream (streams derived from the master rng in island-index order). After
    each generation, if some island is proper, the lowest-index proper
    island's coloring is copied to every island and to the source state.
    """

    def __init__(self, state: ColoringState, lam: int, rng: random.Random):
        if lam < 1:
            raise ParameterError(f"lambda must be >= 1, got {lam}")
        self.source = state
        self.islands = [state.clone() for _ in range(lam)]
        self.streams = [random.Random(rng.getrandbits(64)) for _ in range(lam)]

    def run(self, budget: int) -> SolveOutcome:
        if budget < 1:
            raise ParameterError(f"budget must be >= 1, got {budget}")
        if self.source.is_proper():
            return SolveOutcome(SolveStatus.PROPER, 0, 0)
        lam = len(self.islands)
        gens = 0
        while gens < budget:
            gens += 1
            for island, stream in zip(self.islands, self.streams):
                tailored_rls_step(island, stream)
            winner = next((j for j, isl in enumerate(self.islands) if isl.is_proper()), None)
            if winner is not None:
                won = self.islands[winner]
                for island in self.islands:
                    if island is not won:
                        island.copy_coloring_from(won)
                self.source.copy_coloring_from(won)
                self.source.evaluations += gens * lam
                return SolveOutcome(SolveStatus.PROPER, gens, gens * lam)
        best = min(range(lam), key=lambda j: (self.islands[j].conflict_count, j))
        self.source.copy_coloring_from(self.islands[best])
        self.source.evaluations += gens * lam
        return SolveOutcome(SolveStatus.BUDGET_EXHAUSTED, gens, gens * lam)


def island_solve(state: ColoringState, lam: int, budget: int,
                 rng: random.Random) -> SolveOutcome:
    """Run the island model until some island is proper or the generation
    budget runs out; the state adopts the winning (or best-so-far) coloring.
    An already-proper state returns immediately with zero generations."""
    return IslandSearch(state, lam, rng).run(budget)


def solve_to_proper(state: ColoringState, cfg: OptimizerConfig, budget: int,
                    rng: random.Random) -> SolveOutcome:
    """Drive the configured algorithm until the coloring is proper or `budget`
    generations elapse."""
    if budget < 1:
        raise ParameterError(f"budget must be >= 1, got {budget}")
    if state.is_proper():
        return SolveOutcome(SolveStatus.PROPER, 0, 0)
    if cfg.algorithm is Algorithm.ISLAND:
        return island_solve(state, cfg.lam, budget, rng)
    before = state.evaluations
    gens = 0
    while not state.is_proper() and gens < budget:
        gens += 1
        if cfg.algorithm is Algorithm.GENERIC_RLS:
            generic_rls_step(state, rng)
        elif cfg.algorithm is Algorithm.TAILORED_RLS:
            tailored_rls_step(state, rng)
        elif cfg.algorithm is Algorithm.ONE_PLUS_LAMBDA:
            one_plus_lambda_step(state, cfg.lam, rng)
        else:
            raise ParameterError(f"unknown algorithm {cfg.algorithm}")
    status = SolveStatus.PROPER if state.is_proper() else SolveStatus.BUDGET_EXHAUSTED
    return SolveOutcome(status, gens, state.evaluations - before)
