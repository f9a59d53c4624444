"""Bipartite graph families, construction, and structural metrics.

Vertices are integers in [0, n). Edges are unordered pairs stored as (min, max)
tuples in a fixed indexed list; traversal orders elsewhere in the package refer
to edges by their index in that list.

Canonical vertex numbering per family (fixed so experiments are reproducible):

* path: vertices in path order, edge i joins i and i+1.
* star: center 0, spokes 1..n-1.
* depth_k_star: center 0; arm j occupies vertices 1+j*k .. (j+1)*k walking
  outward from the center.
* complete_bipartite: left side 0..n1-1, right side n1..n1+n2-1.
* toroid: square wrap-around grid, row-major, vertex = row * side + col.
* hypercube: vertex = binary label, edges between labels at Hamming distance 1.
* complete_kary_tree: breadth-first numbering, root 0, children of i are
  branching*i + 1 .. branching*i + branching.
* worst_case_tree: root 0 with t = (n-1)/3 children 1..t; child i has leaf
  children t + 2i - 1 and t + 2i.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import GraphError, ParameterError, SizeLimitError

BRUTE_FORCE_VERTEX_CAP = 20


class FamilyKind(str, Enum):
    PATH = "path"
    STAR = "star"
    DEPTH_K_STAR = "depth_k_star"
    COMPLETE_BIPARTITE = "complete_bipartite"
    TOROID = "toroid"
    HYPERCUBE = "hypercube"
    COMPLETE_KARY_TREE = "complete_kary_tree"
    WORST_CASE_TREE = "worst_case_tree"


@dataclass(frozen=True)
class GraphFamily:
    """A family tag plus its parameters, e.g. GraphFamily.toroid(side=8)."""

    kind: FamilyKind
    params: tuple[tuple[str, int], ...]

    @property
    def as_dict(self) -> dict[str, int]:
        return dict(self.params)

    def __getitem__(self, key: str) -> int:
        return self.as_dict[key]

    def label(self) -> str:
        return self.kind.value

    def to_dict(self) -> dict:
        """Round-trippable spec: family_from_dict(f.to_dict()) == f."""
        return {"kind": self.kind.value, **self.as_dict}

    # -- factories, one per family; each validates its parameters ------------

    @staticmethod
    def path(n: int) -> "GraphFamily":
        if n < 1:
            raise ParameterError(f"path needs n >= 1, got n={n}")
        return GraphFamily(FamilyKind.PATH, (("n", n),))

    @staticmethod
    def star(n: int) -> "GraphFamily":
        if n < 2:
            raise ParameterError(f"star needs n >= 2, got n={n}")
        return GraphFamily(FamilyKind.STAR, (("n", n),))

    @staticmethod
    def depth_k_star(n: int, k: int) -> "GraphFamily":
        if n < 4:
            raise ParameterError(f"depth_k_star needs n >= 4, got n={n}")
        if k < 1 or (n - 1) % k != 0:
            raise ParameterError(f"depth_k_star needs k >= 1 dividing n-1, got n={n} k={k}")
        if k > (n - 1) // 3:
            # fewer than 3 arms would degenerate the family
            raise ParameterError(f"depth_k_star needs k <= (n-1)/3, got n={n} k={k}")
        return GraphFamily(FamilyKind.DEPTH_K_STAR, (("n", n), ("k", k)))

    @staticmethod
    def complete_bipartite(n1: int, n2: int) -> "GraphFamily":
        if n1 < 1 or n2 < 1:
            raise ParameterError(f"complete_bipartite needs n1, n2 >= 1, got {n1}, {n2}")
        return GraphFamily(FamilyKind.COMPLETE_BIPARTITE, (("n1", n1), ("n2", n2)))

    @staticmethod
    def toroid(side: int) -> "GraphFamily":
        if side % 2 != 0:
            raise ParameterError(f"toroid needs an even side (odd sides are not bipartite), got {side}")
        if side < 4:
            # side 2 would collapse wrap-around edges onto direct ones (duplicates)
            raise ParameterError(f"toroid needs side >= 4, got {side}")
        return GraphFamily(FamilyKind.TOROID, (("side", side),))

    @staticmethod
    def hypercube(dim: int) -> "GraphFamily":
        if dim < 1:
            raise ParameterError(f"hypercube needs dim >= 1, got {dim}")
        return GraphFamily(FamilyKind.HYPERCUBE, (("dim", dim),))

    @staticmethod
    def complete_kary_tree(branching: int, depth: int) -> "GraphFamily":
        if branching < 2:
            raise ParameterError(f"complete_kary_tree needs branching >= 2, got {branching}")
        if depth < 1:
            raise ParameterError(f"complete_kary_tree needs depth >= 1, got {depth}")
        return GraphFamily(
            FamilyKind.COMPLETE_KARY_TREE, (("branching", branching), ("depth", depth))
        )

    @staticmethod
    def worst_case_tree(n: int) -> "GraphFamily":
        if n < 4 or n % 3 != 1:
            raise ParameterError(f"worst_case_tree needs n >= 4 with n = 1 mod 3, got n={n}")
        return GraphFamily(FamilyKind.WORST_CASE_TREE, (("n", n),))

    def vertex_count(self) -> int:
        p = self.as_dict
        if self.kind in (FamilyKind.PATH, FamilyKind.STAR, FamilyKind.DEPTH_K_STAR,
                         FamilyKind.WORST_CASE_TREE):
            return p["n"]
        if self.kind is FamilyKind.COMPLETE_BIPARTITE:
            return p["n1"] + p["n2"]
        if self.kind is FamilyKind.TOROID:
            return p["side"] * p["side"]
        if self.kind is FamilyKind.HYPERCUBE:
            return 1 << p["dim"]
        if self.kind is FamilyKind.COMPLETE_KARY_TREE:
            k, d = p["branching"], p["depth"]
            return (k ** (d + 1) - 1) // (k - 1)
        raise ParameterError(f"unknown family kind {self.kind}")


def family_from_dict(d: dict) -> GraphFamily:
    """Build a GraphFamily from a plain dict like {"kind": "path", "n": 16}."""
    d = dict(d)
    try:
        kind = FamilyKind(d.pop("kind"))
    except (KeyError, ValueError) as exc:
        raise ParameterError(f"bad family spec: {exc}") from exc
    factories = {
        FamilyKind.PATH: GraphFamily.path,
        FamilyKind.STAR: GraphFamily.star,
        FamilyKind.DEPTH_K_STAR: GraphFamily.depth_k_star,
        FamilyKind.COMPLETE_BIPARTITE: GraphFamily.complete_bipartite,
        FamilyKind.TOROID: GraphFamily.toroid,
        FamilyKind.HYPERCUBE: GraphFamily.hypercube,
        FamilyKind.COMPLETE_KARY_TREE: GraphFamily.complete_kary_tree,
        FamilyKind.WORST_CASE_TREE: GraphFamily.worst_case_tree,
    }
    try:
        return factories[kind](**d)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for family {kind.value}: {exc}") from exc


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with an indexed edge list."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    family: GraphFamily | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def build_graph(n: int, edges: Iterable[tuple[int, int]],
                family: GraphFamily | None = None) -> Graph:
    """Validate and assemble a Graph. Rejects self-loops, duplicates, out-of-range ids."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    norm: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
        norm.append(e)
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    return Graph(
        n=n,
        edges=tuple(norm),
        adjacency=tuple(tuple(a) for a in adj),
        family=family,
    )


# ---------------------------------------------------------------------------
# generators


def generate(family: GraphFamily) -> Graph:
    """Generate the canonical instance of a family (see module docstring for numbering)."""
    p = family.as_dict
    kind = family.kind
    if kind is FamilyKind.PATH:
        n = p["n"]
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind is FamilyKind.STAR:
        n = p["n"]
        edges = [(0, i) for i in range(1, n)]
    elif kind is FamilyKind.DEPTH_K_STAR:
        n, k = p["n"], p["k"]
        arms = (n - 1) // k
        edges = []
        for j in range(arms):
            base = 1 + j * k
            edges.append((0, base))
            for step in range(k - 1):
                edges.append((base + step, base + step + 1))
    elif kind is FamilyKind.COMPLETE_BIPARTITE:
        n1, n2 = p["n1"], p["n2"]
        n = n1 + n2
        edges = [(a, n1 + b) for a in range(n1) for b in range(n2)]
    elif kind is FamilyKind.TOROID:
        s = p["side"]
        n = s * s
        edges = []
        for r in range(s):
            for c in range(s):
                v = r * s + c
                edges.append((v, r * s + (c + 1) % s))
                edges.append((v, ((r + 1) % s) * s + c))
    elif kind is FamilyKind.HYPERCUBE:
        d = p["dim"]
        n = 1 << d
        edges = [(v, v | (1 << b)) for v in range(n) for b in range(d) if not (v >> b) & 1]
    elif kind is FamilyKind.COMPLETE_KARY_TREE:
        n = family.vertex_count()
        k = p["branching"]
        edges = [((i - 1) // k, i) for i in range(1, n)]
    elif kind is FamilyKind.WORST_CASE_TREE:
        n = p["n"]
        t = (n - 1) // 3
        edges = [(0, i) for i in range(1, t + 1)]
        for i in range(1, t + 1):
            edges.append((i, t + 2 * i - 1))
            edges.append((i, t + 2 * i))
    else:
        raise ParameterError(f"unknown family kind {kind}")
    return build_graph(n, edges, family=family)


# ---------------------------------------------------------------------------
# metrics


def is_bipartite(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-color by BFS; returns the bipartition (side0, side1) or None if an odd cycle exists."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for w in g.adjacency[u]:
                    if color[w] == -1:
                        color[w] = color[u] ^ 1
                        nxt.append(w)
                    elif color[w] == color[u]:
                        return None
            queue = nxt
    side0 = tuple(v for v in range(g.n) if color[v] == 0)
    side1 = tuple(v for v in range(g.n) if color[v] == 1)
    return side0, side1


def _sparse_matrix(g: Graph) -> csr_matrix:
    if g.m == 0:
        return csr_matrix((g.n, g.n), dtype=np.int8)
    rows = np.fromiter((e[0] for e in g.edges), dtype=np.int64, count=g.m)
    cols = np.fromiter((e[1] for e in g.edges), dtype=np.int64, count=g.m)
    data = np.ones(g.m, dtype=np.int8)
    mat = csr_matrix((data, (rows, cols)), shape=(g.n, g.n))
    return mat + mat.T


def diameter(g: Graph) -> int:
    """Exact diameter via all-sources shortest paths. Raises GraphError when disconnected."""
    if g.n == 1:
        return 0
    mat = _sparse_matrix(g)
    ncomp, _ = connected_components(mat, directed=False)
    if ncomp != 1:
        raise GraphError("diameter is undefined on a disconnected graph")
    dist = shortest_path(mat, method="D", directed=False, unweighted=True)
    return int(dist.max())


def _analytic_longest_path(family: GraphFamily) -> int:
    p = family.as_dict
    kind = family.kind
    if kind is FamilyKind.PATH:
        return p["n"] - 1
    if kind is FamilyKind.STAR:
        return min(2, p["n"] - 1)
    if kind is FamilyKind.DEPTH_K_STAR:
        return 2 * p["k"]
    if kind is FamilyKind.COMPLETE_BIPARTITE:
        n1, n2 = p["n1"], p["n2"]
        # alternating sides: a path uses at most min+1 vertices of the larger side
        return 2 * min(n1, n2) - (1 if n1 == n2 else 0)
    if kind in (FamilyKind.TOROID, FamilyKind.HYPERCUBE):
        return family.vertex_count() - 1  # both admit a Hamiltonian path
    if kind is FamilyKind.COMPLETE_KARY_TREE:
        return 2 * p["depth"]
    if kind is FamilyKind.WORST_CASE_TREE:
        t = (p["n"] - 1) // 3
        return 2 if t == 1 else 4
    raise ParameterError(f"unknown family kind {kind}")


def longest_path(g: Graph, mode: str = "analytic") -> int:
    """Length (edge count) of a longest simple path.

    mode="analytic" uses the closed form for the graph's family tag and
    requires the graph to carry one. mode="brute_force" runs an exhaustive
    dynamic program over (vertex subset, endpoint) states and is capped at
    n <= 20.
    """
    if mode == "analytic":
        if g.family is None:
            raise ParameterError("analytic longest_path needs a graph with a family tag")
        return _analytic_longest_path(g.family)
    if mode == "brute_force":
        if g.n > BRUTE_FORCE_VERTEX_CAP:
            raise SizeLimitError(
                f"brute-force longest_path is capped at n <= {BRUTE_FORCE_VERTEX_CAP}, got n={g.n}"
            )
        if g.m == 0:
            return 0
        from ._kernels import longest_path_dp

        indptr = np.zeros(g.n + 1, dtype=np.int64)
        for v in range(g.n):
            indptr[v + 1] = indptr[v] + len(g.adjacency[v])
        indices = np.fromiter(
            (u for v in range(g.n) for u in g.adjacency[v]), dtype=np.int64, count=2 * g.m
        )
        return int(longest_path_dp(g.n, indptr, indices))
    raise ParameterError(f"unknown longest_path mode {mode!r}")


@dataclass(frozen=True)
class GraphMetrics:
    diameter: int
    longest_path: int
    longest_path_source: str  # "analytic" or "brute_force"


def compute_metrics(g: Graph, longest_mode: str = "analytic") -> GraphMetrics:
    return GraphMetrics(
        diameter=diameter(g),
        longest_path=longest_path(g, mode=longest_mode),
        longest_path_source=longest_mode,
    )


# ---------------------------------------------------------------------------
# edge-list text format: first line "n m", then one "u v" line per edge


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
    except ValueError as exc:
        raise GraphError(f"bad header line: {exc}") from exc
    if len(rows) - 1 != m:
        raise GraphError(f"header declares {m} edges but {len(rows) - 1} lines follow")
    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise GraphError(f"bad edge line {' '.join(row)!r}")
        try:
            edges.append((int(row[0]), int(row[1])))
        except ValueError as exc:
            raise GraphError(f"bad edge line {' '.join(row)!r}: {exc}") from exc
    return build_graph(n, edges)
