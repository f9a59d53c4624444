import random
from collections import Counter, deque

import pytest

from increcolor import (GraphError, GraphFamily, OrderKind, ParameterError,
                        bfs_order, dfs_order, format_order, generate,
                        generic_traversal_order, is_traversal_order,
                        parse_order, random_order, worst_case_order)

N_SEEDS = 40
N_FREQ_SAMPLES = 60_000

TRAVERSAL_FAMILIES = [
    GraphFamily.path(9),
    GraphFamily.star(8),
    GraphFamily.depth_k_star(13, 3),
    GraphFamily.complete_bipartite(4, 5),
    GraphFamily.toroid(4),
    GraphFamily.hypercube(3),
    GraphFamily.complete_kary_tree(2, 3),
    GraphFamily.worst_case_tree(13),
]


def bfs_distances(g, start):
    dist = [-1] * g.n
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def is_tree_dfs_order(g, order, start):
    """Check an edge order against a stack simulation of depth-first search.

    Only meaningful for trees: every emitted edge must descend from the
    deepest stack vertex that still has an unvisited neighbor.
    """
    visited = {start}
    stack = [start]
    for idx in order.permutation:
        u, v = g.edges[idx]
        while stack and all(w in visited for w in g.adjacency[stack[-1]]):
            stack.pop()
        if not stack:
            return False
        top = stack[-1]
        if u == top and v not in visited:
            new = v
        elif v == top and u not in visited:
            new = u
        else:
            return False
        visited.add(new)
        stack.append(new)
    return len(visited) == g.n


def test_traversal_orders_are_valid():
    for family in TRAVERSAL_FAMILIES:
        g = generate(family)
        for seed in range(N_SEEDS):
            rng = random.Random(seed)
            assert is_traversal_order(g, bfs_order(g, rng=rng))
            assert is_traversal_order(g, dfs_order(g, rng=rng))
            assert is_traversal_order(g, dfs_order(g, rng=rng, depth_greedy=True))
            assert is_traversal_order(g, generic_traversal_order(g, rng))


def test_bfs_emits_levels_in_order():
    for family in TRAVERSAL_FAMILIES:
        g = generate(family)
        for seed in range(10):
            order = bfs_order(g, start=0, rng=random.Random(seed))
            dist = bfs_distances(g, 0)
            levels = [min(dist[u], dist[v])
                      for u, v in (g.edges[i] for i in order.permutation)]
            assert levels == sorted(levels)


def test_bfs_first_edges_leave_the_start():
    g = generate(GraphFamily.complete_bipartite(4, 4))
    for seed in range(10):
        order = bfs_order(g, start=0, rng=random.Random(seed))
        first = [g.edges[i] for i in order.permutation[:4]]
        assert all(0 in e for e in first)


def test_bfs_from_path_end_is_deterministic():
    g = generate(GraphFamily.path(10))
    for seed in range(5):
        order = bfs_order(g, start=0, rng=random.Random(seed))
        assert order.permutation == tuple(range(9))


def test_dfs_respects_stack_discipline_on_trees():
    trees = [GraphFamily.path(8), GraphFamily.star(7),
             GraphFamily.depth_k_star(13, 3), GraphFamily.complete_kary_tree(2, 3),
             GraphFamily.worst_case_tree(13)]
    for family in trees:
        g = generate(family)
        for seed in range(N_SEEDS):
            rng = random.Random(seed)
            start = rng.randrange(g.n)
            order = dfs_order(g, start=start, rng=rng)
            assert is_tree_dfs_order(g, order, start)


def test_bfs_from_path_middle_violates_dfs_discipline():
    # from an interior vertex breadth-first search interleaves the two
    # directions, which a stack simulation rejects
    g = generate(GraphFamily.path(9))
    rejected = 0
    for seed in range(N_SEEDS):
        order = bfs_order(g, start=4, rng=random.Random(seed))
        if not is_tree_dfs_order(g, order, 4):
            rejected += 1
    assert rejected > 0


def test_dfs_and_bfs_differ_on_path_from_interior():
    g = generate(GraphFamily.path(4))
    dfs_seen = set()
    bfs_seen = set()
    for seed in range(200):
        dfs_seen.add(dfs_order(g, start=1, rng=random.Random(seed)).permutation)
        bfs_seen.add(bfs_order(g, start=1, rng=random.Random(seed)).permutation)
    # edges are (0,1)=0, (1,2)=1, (2,3)=2
    assert dfs_seen == {(0, 1, 2), (1, 2, 0)}
    assert bfs_seen == {(0, 1, 2), (1, 0, 2)}


def test_depth_greedy_dfs_builds_hamiltonian_path_on_complete_bipartite():
    g = generate(GraphFamily.complete_bipartite(4, 4))
    for seed in range(N_SEEDS):
        order = dfs_order(g, rng=random.Random(seed), depth_greedy=True)
        prefix = [g.edges[i] for i in order.permutation[:g.n - 1]]
        deg = Counter()
        for u, v in prefix:
            deg[u] += 1
            deg[v] += 1
        assert len(deg) == g.n
        assert sorted(deg.values()) == [1, 1] + [2] * (g.n - 2)
        # a degree<=2 graph on n vertices with n-1 edges touching all
        # vertices is a Hamiltonian path iff it is connected
        assert is_traversal_order(g, order)


def test_generic_order_on_two_edge_path():
    g = generate(GraphFamily.path(3))
    counts = Counter()
    rng = random.Random(99)
    for _ in range(2000):
        counts[generic_traversal_order(g, rng).permutation] += 1
    assert set(counts) == {(0, 1), (1, 0)}
    assert abs(counts[(0, 1)] / 2000 - 0.5) < 0.05


def test_generic_order_uniform_on_star_spokes():
    g = generate(GraphFamily.star(4))
    counts = Counter()
    rng = random.Random(5)
    reps = 12_000
    for _ in range(reps):
        counts[generic_traversal_order(g, rng).permutation] += 1
    assert len(counts) == 6
    for perm, c in counts.items():
        assert abs(c / reps - 1 / 6) < 0.02


def test_random_order_is_uniform_over_permutations():
    g = generate(GraphFamily.path(4))
    counts = Counter()
    rng = random.Random(31)
    for _ in range(N_FREQ_SAMPLES):
        counts[random_order(g, rng).permutation] += 1
    assert len(counts) == 6
    for perm, c in counts.items():
        assert abs(c / N_FREQ_SAMPLES - 1 / 6) < 0.01


def test_worst_case_order_smallest_instance_is_a_traversal():
    g = generate(GraphFamily.worst_case_tree(4))
    order = worst_case_order(g)
    assert order.kind is OrderKind.WORST_CASE
    assert is_traversal_order(g, order)


def test_worst_case_order_breaks_traversal_property():
    for n in (7, 13, 22):
        g = generate(GraphFamily.worst_case_tree(n))
        order = worst_case_order(g)
        assert not is_traversal_order(g, order)
        # leaves first, then the root edges
        t = (n - 1) // 3
        assert order.permutation[-t:] == tuple(range(t))


def test_worst_case_order_requires_matching_family():
    g = generate(GraphFamily.path(7))
    with pytest.raises(ParameterError):
        worst_case_order(g)


def test_orders_deterministic_under_seeded_rng():
    g = generate(GraphFamily.toroid(4))
    for maker in (bfs_order, dfs_order):
        a = maker(g, rng=random.Random(77))
        b = maker(g, rng=random.Random(77))
        assert a.permutation == b.permutation
    a = generic_traversal_order(g, random.Random(77))
    b = generic_traversal_order(g, random.Random(77))
    assert a.permutation == b.permutation
    a = random_order(g, random.Random(77))
    b = random_order(g, random.Random(77))
    assert a.permutation == b.permutation


def test_int_seed_accepted_and_recorded():
    g = generate(GraphFamily.hypercube(3))
    a = bfs_order(g, rng=123)
    b = bfs_order(g, rng=123)
    assert a.permutation == b.permutation
    assert a.seed == 123


def test_order_serialization_round_trip():
    g = generate(GraphFamily.depth_k_star(13, 3))
    orders = [bfs_order(g, start=2, rng=11),
              dfs_order(g, rng=12),
              generic_traversal_order(g, random.Random(13)),
              random_order(g, random.Random(14)),
              worst_case_order(generate(GraphFamily.worst_case_tree(13)))]
    for order in orders:
        back = parse_order(format_order(order))
        assert back.permutation == order.permutation
        assert back.kind == order.kind
        assert back.start_vertex == order.start_vertex
        assert back.seed == order.seed


def test_disconnected_graph_rejected():
    from increcolor import build_graph
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        bfs_order(g, rng=1)
    with pytest.raises(GraphError):
        dfs_order(g, rng=1)
    with pytest.raises(GraphError):
        generic_traversal_order(g, random.Random(1))


def test_is_traversal_order_rejects_non_permutation():
    g = generate(GraphFamily.path(4))
    from increcolor import EdgeOrder
    with pytest.raises(ParameterError):
        is_traversal_order(g, EdgeOrder(permutation=(0, 0, 1), kind=OrderKind.UNIFORM_RANDOM))
    with pytest.raises(ParameterError):
        is_traversal_order(g, EdgeOrder(permutation=(0, 1), kind=OrderKind.UNIFORM_RANDOM))
