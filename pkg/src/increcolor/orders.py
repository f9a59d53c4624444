"""Edge insertion orders.

An order is a permutation of a graph's edge indices. A traversal order is one
whose every prefix avoids joining two existing connected components of the
edge-induced subgraph (an edge whose endpoints are both unseen starts a new
component, which is allowed; an edge within one component is allowed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .errors import GraphError, ParameterError
from .graphs import FamilyKind, Graph


class OrderKind(str, Enum):
    BFS = "bfs"
    DFS = "dfs"
    GENERIC = "generic"
    WORST_CASE = "worst_case"
    UNIFORM_RANDOM = "uniform_random"


@dataclass(frozen=True)
class EdgeOrder:
    permutation: tuple[int, ...]
    kind: OrderKind
    start_vertex: int | None = None
    seed: int | None = None


RngLike = random.Random | int | None


def _resolve_rng(rng: RngLike) -> tuple[random.Random, int | None]:
    """Accept a seed, an rng instance, or None (fresh unseeded rng)."""
    if rng is None:
        return random.Random(), None
    if isinstance(rng, int):
        return random.Random(rng), rng
    return rng, None


def _resolve_start(g: Graph, start: int | None, rng: random.Random) -> int:
    if start is None:
        return rng.randrange(g.n)
    if not 0 <= start < g.n:
        raise ParameterError(f"start vertex {start} out of range for n={g.n}")
    return start


def _edge_index_map(g: Graph) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(g.edges)}


def bfs_order(g: Graph, start: int | None = None, rng: RngLike = None) -> EdgeOrder:
    """Breadth-first order: when a vertex is dequeued, all of its not-yet-emitted
    incident edges are emitted consecutively, neighbor scan shuffled by the rng."""
    r, seed = _resolve_rng(rng)
    s = _resolve_start(g, start, r)
    index = _edge_index_map(g)
    emitted = [False] * g.m
    visited = [False] * g.n
    visited[s] = True
    queue = [s]
    head = 0
    perm: list[int] = []
    while head < len(queue):
        u = queue[head]
        head += 1
        neighbors = list(g.adjacency[u])
        r.shuffle(neighbors)
        for w in neighbors:
            e = index[(u, w) if u < w else (w, u)]
            if not emitted[e]:
                emitted[e] = True
                perm.append(e)
            if not visited[w]:
                visited[w] = True
                queue.append(w)
    if len(perm) != g.m:
        raise GraphError("bfs_order requires a connected graph")
    return EdgeOrder(tuple(perm), OrderKind.BFS, start_vertex=s, seed=seed)


def dfs_order(g: Graph, start: int | None = None, rng: RngLike = None,
              depth_greedy: bool = False) -> EdgeOrder:
    """Depth-first order: tree edges are emitted on descent, a non-tree edge the
    moment the neighbor scan first encounters it.

    With depth_greedy the scan always prefers an unvisited neighbor while one
    exists (descending whenever possible) and only then works through the edges
    to visited neighbors; without it the scan processes the incident edges in a
    uniformly shuffled order.
    """
    r, seed = _resolve_rng(rng)
    s = _resolve_start(g, start, r)
    index = _edge_index_map(g)
    emitted = [False] * g.m
    visited = [False] * g.n
    visited[s] = True
    perm: list[int] = []

    def new_frame(v: int) -> list:
        pool = list(g.adjacency[v])
        r.shuffle(pool)
        # [vertex, shuffled unprocessed neighbors, deferred already-visited neighbors]
        return [v, pool, []]

    stack: list[list] = [new_frame(s)]
    while stack:
        u, pool, deferred = stack[-1]
        w: int | None = None
        if depth_greedy:
            # popping from the tail of a uniform shuffle and skipping visited
            # hits draws uniformly among the currently unvisited neighbors
            while pool:
                cand = pool.pop()
                if visited[cand]:
                    deferred.append(cand)
                else:
                    w = cand
                    break
            if w is None and deferred:
                i = r.randrange(len(deferred))
                deferred[i], deferred[-1] = deferred[-1], deferred[i]
                w = deferred.pop()
        elif pool:
            w = pool.pop()
        if w is None:
            stack.pop()
            continue
        e = index[(u, w) if u < w else (w, u)]
        if not visited[w]:
            emitted[e] = True
            perm.append(e)
            visited[w] = True
            stack.append(new_frame(w))
        elif not emitted[e]:
            emitted[e] = True
            perm.append(e)
    if len(perm) != g.m:
        raise GraphError("dfs_order requires a connected graph")
    return EdgeOrder(tuple(perm), OrderKind.DFS, start_vertex=s, seed=seed)


def generic_traversal_order(g: Graph, rng: RngLike = None) -> EdgeOrder:
    """Uniform choice, at every step, among the unemitted edges touching the
    already-seen vertex set (first edge uniform among all edges).

    Grows a single component, so it requires a connected graph; on connected
    inputs this matches the prefix condition checked by is_traversal_order.
    """
    r, seed = _resolve_rng(rng)
    if g.m == 0:
        return EdgeOrder((), OrderKind.GENERIC, seed=seed)
    seen = [False] * g.n
    # frontier: indices of unemitted edges with >= 1 seen endpoint, as an
    # indexed set so sampling stays O(1)
    in_frontier = [False] * g.m
    frontier: list[int] = []
    pos = [-1] * g.m
    emitted = [False] * g.m

    def frontier_add(e: int) -> None:
        if not in_frontier[e] and not emitted[e]:
            in_frontier[e] = True
            pos[e] = len(frontier)
            frontier.append(e)

    def frontier_remove(e: int) -> None:
        i = pos[e]
        last = frontier[-1]
        frontier[i] = last
        pos[last] = i
        frontier.pop()
        pos[e] = -1
        in_frontier[e] = False

    index = _edge_index_map(g)

    def mark_seen(v: int) -> None:
        seen[v] = True
        for w in g.adjacency[v]:
            frontier_add(index[(v, w) if v < w else (w, v)])

    first = r.randrange(g.m)
    perm = [first]
    emitted[first] = True
    u0, v0 = g.edges[first]
    mark_seen(u0)
    mark_seen(v0)
    if in_frontier[first]:
        frontier_remove(first)
    while len(perm) < g.m:
        if not frontier:
            raise GraphError("generic_traversal_order requires a connected graph")
        e = frontier[r.randrange(len(frontier))]
        frontier_remove(e)
        emitted[e] = True
        perm.append(e)
        u, v = g.edges[e]
        if not seen[u]:
            mark_seen(u)
        if not seen[v]:
            mark_seen(v)
    return EdgeOrder(tuple(perm), OrderKind.GENERIC, seed=seed)


def worst_case_order(g: Graph) -> EdgeOrder:
    """Deterministic order for the canonical worst-case tree: every
    child-to-leaf edge first, then every root-to-child edge."""
    t = (g.n - 1) // 3
    if g.n < 4 or g.n % 3 != 1:
        raise ParameterError("worst_case_order needs a worst-case tree (n = 1 mod 3, n >= 4)")
    expected = {(0, i) for i in range(1, t + 1)}
    leaf_edges = set()
    for i in range(1, t + 1):
        leaf_edges.add((i, t + 2 * i - 1))
        leaf_edges.add((i, t + 2 * i))
    actual = set(g.edges)
    if actual != expected | leaf_edges:
        raise ParameterError("worst_case_order needs the canonical worst-case tree labeling")
    index = _edge_index_map(g)
    perm = sorted(index[e] for e in leaf_edges) + sorted(index[e] for e in expected)
    return EdgeOrder(tuple(perm), OrderKind.WORST_CASE)


def random_order(g: Graph, rng: RngLike = None) -> EdgeOrder:
    """Uniformly random permutation of the edge indices."""
    r, seed = _resolve_rng(rng)
    perm = list(range(g.m))
    r.shuffle(perm)
    return EdgeOrder(tuple(perm), OrderKind.UNIFORM_RANDOM, seed=seed)


def is_traversal_order(g: Graph, order: EdgeOrder) -> bool:
    """Check the prefix condition: no inserted edge may join two existing
    components (both-endpoints-unseen edges start a new component and pass)."""
    if sorted(order.permutation) != list(range(g.m)):
        raise ParameterError("order is not a permutation of the graph's edge indices")
    parent = list(range(g.n))
    seen = [False] * g.n

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in order.permutation:
        u, v = g.edges[e]
        if seen[u] and seen[v]:
            ru, rv = find(u), find(v)
            if ru != rv:
                return False  # would merge two existing components
        else:
            seen[u] = True
            seen[v] = True
        parent[find(u)] = find(v)
    return True


# ---------------------------------------------------------------------------
# text format: "kind seed start" then the m edge indices, all on one line


def format_order(order: EdgeOrder) -> str:
    seed = "-" if order.seed is None else str(order.seed)
    start = "-" if order.start_vertex is None else str(order.start_vertex)
    head = f"{order.kind.value} {seed} {start}"
    if order.permutation:
        return head + " " + " ".join(map(str, order.permutation)) + "\n"
    return head + "\n"


def parse_order(text: str) -> EdgeOrder:
    fields = text.split()
    if len(fields) < 3:
        raise ParameterError("order line needs at least 'kind seed start'")
    try:
        kind = OrderKind(fields[0])
    except ValueError as exc:
        raise ParameterError(f"unknown order kind {fields[0]!r}") from exc
    seed = None if fields[1] == "-" else int(fields[1])
    start = None if fields[2] == "-" else int(fields[2])
    perm = tuple(int(x) for x in fields[3:])
    return EdgeOrder(perm, kind, start_vertex=start, seed=seed)
