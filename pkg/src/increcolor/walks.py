"""Hitting-time oracle for fair and lazy random walks on a line segment.

Walk model: states are integers, state 0 is absorbing. Each step the walk
moves with probability p (else it stays put); a move goes down or up with
probability 1/2 each. Two boundary regimes:

* ABSORB_REFLECT: a wall sits above the top state. Two wall conventions exist
  and they differ by exactly x0/p in expectation, so the choice matters:

  - "bounce" (default): the walk occupies {0..k-1} and an attempted up-step
    from k-1 is returned by the wall (the walk stays). Expected absorption
    time from x0 is exactly x0*(2k - x0 - 1)/p, which is the closed form
    `expected_absorption_closed_form` reports; a walk started at state 1 takes
    2k - 2 expected steps. Start state k is identified with the top state k-1
    (the closed form agrees there too: both give k*(k-1)/p).
  - "push": the walk occupies {0..k} and a move at state k is forced downward.
    Expected absorption time from x0 is exactly x0*(2k - x0)/p.

* ABSORB_BOTH: states {0..k} with both 0 and k absorbing; expected absorption
  time from x0 is x0*(k - x0)/p (`expected_two_sided_closed_form`).

The simulation helpers (min-of-eta walks, tail checks) use the bounce
convention, matching the closed forms above.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.linalg import solve_banded

from .errors import ParameterError

EXACT_K_CAP = 10_000


class WalkBoundary(str, Enum):
    ABSORB_REFLECT = "absorb_reflect"
    ABSORB_BOTH = "absorb_both"


@dataclass(frozen=True)
class RandomWalkSpec:
    """Segment length k, start state x0, move probability p, boundary regime."""

    k: int
    x0: int
    p: float = 1.0
    boundary: WalkBoundary = WalkBoundary.ABSORB_REFLECT

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ParameterError(f"walk needs k >= 1, got k={self.k}")
        if not 0 <= self.x0 <= self.k:
            raise ParameterError(f"walk start must satisfy 0 <= x0 <= k, got x0={self.x0}")
        if not 0 < self.p <= 1:
            raise ParameterError(f"move probability must be in (0, 1], got p={self.p}")


def expected_absorption_closed_form(spec: RandomWalkSpec) -> Fraction:
    """x0*(2k - x0 - 1)/p, exact under the bounce convention (see module docstring)."""
    if spec.boundary is not WalkBoundary.ABSORB_REFLECT:
        raise ParameterError("closed form applies to the absorb/reflect boundary")
    return Fraction(spec.x0 * (2 * spec.k - spec.x0 - 1)) / Fraction(spec.p)


def expected_two_sided_closed_form(spec: RandomWalkSpec) -> Fraction:
    """x0*(k - x0)/p for the doubly absorbing segment."""
    if spec.boundary is not WalkBoundary.ABSORB_BOTH:
        raise ParameterError("two-sided closed form applies to the absorb/absorb boundary")
    return Fraction(spec.x0 * (spec.k - spec.x0)) / Fraction(spec.p)


def _solve_tridiagonal(size: int, sub, diag, sup, rhs) -> np.ndarray:
    ab = np.zeros((3, size))
    ab[0, 1:] = sup[:-1]
    ab[1, :] = diag
    ab[2, :-1] = sub[1:]
    return solve_banded((1, 1), ab, rhs)


def exact_hitting_times(spec: RandomWalkSpec, convention: str = "bounce") -> np.ndarray:
    """Expected absorption times for every start state, by first-step analysis.

    Returns a vector of length k+1 indexed by start state. Solves the
    tridiagonal linear system of the chain directly (no closed form), so it
    serves as an independent check of the formulas above. `convention` picks
    the reflecting-wall behavior ("bounce" or "push") and only matters for
    the ABSORB_REFLECT boundary.
    """
    k, p = spec.k, spec.p
    if k > EXACT_K_CAP:
        raise ParameterError(f"exact_hitting_times is capped at k <= {EXACT_K_CAP}, got k={k}")
    if convention not in ("bounce", "push"):
        raise ParameterError(f"unknown wall convention {convention!r}")
    out = np.zeros(k + 1)
    if spec.boundary is WalkBoundary.ABSORB_BOTH:
        size = k - 1
        if size > 0:
            diag = np.ones(size)
            sub = np.full(size, -0.5)
            sup = np.full(size, -0.5)
            rhs = np.full(size, 1.0 / p)
            out[1:k] = _solve_tridiagonal(size, sub, diag, sup, rhs)
        return out
    if convention == "bounce":
        top = k - 1
        size = top
        if size > 0:
            diag = np.ones(size)
            sub = np.full(size, -0.5)
            sup = np.full(size, -0.5)
            rhs = np.full(size, 1.0 / p)
            # top row: E_top - E_{top-1} = 2/p (wall returns half the moves)
            diag[-1] = 1.0
            sub[-1] = -1.0
            rhs[-1] = 2.0 / p
            out[1:top + 1] = _solve_tridiagonal(size, sub, diag, sup, rhs)
        out[k] = out[max(k - 1, 0)]
        return out
    # push: states {0..k}, forced down-step at k: E_k - E_{k-1} = 1/p
    size = k
    diag = np.ones(size)
    sub = np.full(size, -0.5)
    sup = np.full(size, -0.5)
    rhs = np.full(size, 1.0 / p)
    diag[-1] = 1.0
    sub[-1] = -1.0
    rhs[-1] = 1.0 / p
    out[1:] = _solve_tridiagonal(size, sub, diag, sup, rhs)
    return out


RngLike = random.Random | int | None


def _kernel_seed(rng: RngLike) -> int:
    if rng is None:
        return random.getrandbits(32)
    if isinstance(rng, int):
        return rng & 0xFFFFFFFF
    return rng.getrandbits(32)


@dataclass(frozen=True)
class MinWalkSummary:
    """Absorption-time samples for the earliest of eta lockstep walks."""

    k: int
    eta: int
    times: np.ndarray

    @property
    def mean(self) -> float:
        return float(self.times.mean())

    @property
    def variance(self) -> float:
        return float(self.times.var())

    def tail(self, t: float) -> float:
        """Empirical probability that the absorption time is >= t."""
        return float((self.times >= t).mean())


def simulate_min_of_eta(k: int, eta: int, samples: int, rng: RngLike = None) -> MinWalkSummary:
    """Run `samples` independent experiments of eta lockstep fair walks, each
    started at state 1 under the bounce convention, and record the first
    generation at which any walk is absorbed at 0."""
    if k < 2:
        raise ParameterError(f"simulate_min_of_eta needs k >= 2, got k={k}")
    if eta < 1:
        raise ParameterError(f"simulate_min_of_eta needs eta >= 1, got eta={eta}")
    if samples < 1:
        raise ParameterError(f"simulate_min_of_eta needs samples >= 1, got {samples}")
    from ._kernels import min_walk_times

    times = min_walk_times(k, eta, samples, _kernel_seed(rng))
    return MinWalkSummary(k=k, eta=eta, times=times)


@dataclass(frozen=True)
class TailCheck:
    k: int
    r: int
    threshold: int
    samples: int
    empirical: float
    bound: float
    stderr: float
    passed: bool


def tail_check_report(k: int, r: int, samples: int, rng: RngLike = None) -> TailCheck:
    """Start a fair walk at the top state (the worst start) and compare the
    empirical tail probability at threshold 2*r*k^2 against 2^-r plus three
    standard errors."""
    if k < 2:
        raise ParameterError(f"tail check needs k >= 2, got k={k}")
    if r < 1:
        raise ParameterError(f"tail check needs r >= 1, got r={r}")
    if samples < 1:
        raise ParameterError(f"tail check needs samples >= 1, got {samples}")
    from ._kernels import tail_exceed_count

    threshold = 2 * r * k * k
    count = int(tail_exceed_count(k, threshold, samples, _kernel_seed(rng)))
    empirical = count / samples
    stderr = math.sqrt(empirical * (1.0 - empirical) / samples)
    bound = 2.0 ** -r
    return TailCheck(
        k=k, r=r, threshold=threshold, samples=samples,
        empirical=empirical, bound=bound, stderr=stderr,
        passed=empirical <= bound + 3.0 * stderr,
    )


def check_tail_bound(k: int, r: int, samples: int, rng: RngLike = None) -> bool:
    return tail_check_report(k, r, samples, rng).passed
