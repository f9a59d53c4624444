"""Dynamic 2-coloring state over an incrementally inserted edge set.

The state tracks, for the edges inserted so far, how many of them are
monochromatic (conflicts), which vertices touch at least one conflicting edge
(with multiplicity counts, so membership survives overlapping conflicts), and a
fitness evaluation counter owned by the optimizers.

Cost contract: flip_delta is O(1), apply_flip and insert_edge are O(degree of
the touched vertex) including conflict-set maintenance, sampling a conflicting
vertex is O(1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ContractError, GraphError


class IndexedSet:
    """Set of ints with O(1) add, remove, membership, and uniform sampling."""

    __slots__ = ("_members", "_pos")

    def __init__(self) -> None:
        self._members: list[int] = []
        self._pos: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, v: int) -> bool:
        return v in self._pos

    def __iter__(self):
        return iter(self._members)

    def add(self, v: int) -> None:
        if v not in self._pos:
            self._pos[v] = len(self._members)
            self._members.append(v)

    def remove(self, v: int) -> None:
        i = self._pos.pop(v)
        last = self._members.pop()
        if i < len(self._members):
            self._members[i] = last
            self._pos[last] = i

    def sample(self, rng: random.Random) -> int:
        return self._members[rng.randrange(len(self._members))]

    def copy(self) -> "IndexedSet":
        dup = IndexedSet()
        dup._members = list(self._members)
        dup._pos = dict(self._pos)
        return dup


@dataclass(frozen=True)
class FlipResult:
    vertex: int
    delta: int  # change in conflict count


class ColoringState:
    """Mutable coloring plus conflict bookkeeping for the inserted subgraph."""

    __slots__ = ("n", "colors", "active_edge_count", "conflict_count", "evaluations",
                 "_adj", "_conf", "_conflicting", "_edge_set")

    def __init__(self, colors: list[int]):
        self.n = len(colors)
        self.colors = list(colors)
        self.active_edge_count = 0
        self.conflict_count = 0
        self.evaluations = 0
        self._adj: list[list[int]] = [[] for _ in range(self.n)]
        self._conf: list[int] = [0] * self.n
        self._conflicting = IndexedSet()
        self._edge_set: set[tuple[int, int]] = set()

    # -- queries -------------------------------------------------------------

    def is_proper(self) -> bool:
        return self.conflict_count == 0

    def inserted_degree(self, v: int) -> int:
        return len(self._adj[v])

    def inserted_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self._adj[v])

    def inserted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._edge_set))

    def conflicting_vertices(self) -> tuple[int, ...]:
        return tuple(self._conflicting)

    def conflicting_count(self, v: int) -> int:
        """Number of conflicting inserted edges incident to v."""
        return self._conf[v]

    def sample_conflicting_vertex(self, rng: random.Random) -> int:
        if not self._conflicting:
            raise ContractError("no conflicting vertices to sample")
        return self._conflicting.sample(rng)

    def flip_delta(self, v: int) -> int:
        """Change in conflict count if v were flipped; does not mutate."""
        return len(self._adj[v]) - 2 * self._conf[v]

    # -- mutations -----------------------------------------------------------

    def insert_edge(self, u: int, v: int) -> bool:
        """Insert {u, v}; returns True when the edge lands monochromatic."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in self._edge_set:
            raise ContractError(f"edge {key} inserted twice")
        self._edge_set.add(key)
        self._adj[u].append(v)
        self._adj[v].append(u)
        self.active_edge_count += 1
        if self.colors[u] == self.colors[v]:
            self.conflict_count += 1
            for w in (u, v):
                self._conf[w] += 1
                if self._conf[w] == 1:
                    self._conflicting.add(w)
            return True
        return False

    def apply_flip(self, v: int) -> FlipResult:
        delta = len(self._adj[v]) - 2 * self._conf[v]
        old = self.colors[v]
        self.colors[v] = old ^ 1
        for u in self._adj[v]:
            if self.colors[u] == old:
                # the edge {v, u} was conflicting, no longer is
                self._conf[u] -= 1
                if self._conf[u] == 0:
                    self._conflicting.remove(u)
            else:
                self._conf[u] += 1
                if self._conf[u] == 1:
                    self._conflicting.add(u)
        new_conf = len(self._adj[v]) - self._conf[v]
        if self._conf[v] > 0 and new_conf == 0:
            self._conflicting.remove(v)
        elif self._conf[v] == 0 and new_conf > 0:
            self._conflicting.add(v)
        self._conf[v] = new_conf
        self.conflict_count += delta
        return FlipResult(vertex=v, delta=delta)

    def copy_coloring_from(self, other: "ColoringState") -> None:
        """Adopt another state's coloring and conflict bookkeeping.

        Both states must hold the same inserted edge set; used for island
        migration where islands share the subgraph and differ only in colors.
        """
        self.colors = list(other.colors)
        self.conflict_count = other.conflict_count
        self._conf = list(other._conf)
        self._conflicting = other._conflicting.copy()

    def clone(self) -> "ColoringState":
        dup = ColoringState.__new__(ColoringState)
        dup.n = self.n
        dup.colors = list(self.colors)
        dup.active_edge_count = self.active_edge_count
        dup.conflict_count = self.conflict_count
        dup.evaluations = self.evaluations
        dup._adj = [list(a) for a in self._adj]
        dup._conf = list(self._conf)
        dup._conflicting = self._conflicting.copy()
        dup._edge_set = set(self._edge_set)
        return dup

    # -- serialization -------------------------------------------------------

    def to_bits(self) -> str:
        return "".join(map(str, self.colors))

    @staticmethod
    def from_bits(bits: str) -> "ColoringState":
        if not bits or any(c not in "01" for c in bits):
            raise GraphError(f"coloring bits must be a nonempty 0/1 string, got {bits!r}")
        return ColoringState([int(c) for c in bits])


def init_random_coloring(n: int, rng: random.Random) -> ColoringState:
    """Fresh state over n isolated vertices with a uniform random coloring."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    return ColoringState([rng.randrange(2) for _ in range(n)])
