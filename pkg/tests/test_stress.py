"""Stress the colorers past the exhaustive corpus with structured families
that are ISK4-free for classical reasons: series-parallel graphs (no K4
subdivision even as a subgraph) and line graphs of subcubic graphs."""

import random

from isk4color.colorers import color_general, color_triangle_free
from isk4color.families import line_graph
from isk4color.graph import Graph, is_connected, is_proper_coloring
from isk4color.oracle import contains_isk4
from isk4color.patterns import find_triangle


def series_parallel(rng, ops):
    """Random two-terminal series/parallel composition with ``ops`` steps."""
    edges = [(0, 1)]
    n = 2
    s, t = 0, 1
    for _ in range(ops):
        u, v = edges[rng.randrange(len(edges))]
        if rng.random() < 0.5:
            edges.append((u, v))  # parallel duplicate, deduped by Graph
        else:
            edges.remove((u, v))
            edges.append((u, n))
            edges.append((n, v))
            n += 1
    return Graph(n, edges), s, t


def test_series_parallel_graphs_color_within_bound():
    rng = random.Random(404)
    checked = 0
    for _ in range(60):
        g, _, _ = series_parallel(rng, rng.randint(4, 24))
        if g.n > 26 or not is_connected(g):
            continue
        if g.n <= 16:
            assert contains_isk4(g) is None
        result = color_general(g, mode="strict")
        assert result.violations == []
        assert result.coloring.palette_size <= 24
        assert is_proper_coloring(g, result.coloring)
        if find_triangle(g) is None:
            tf = color_triangle_free(g, mode="strict")
            assert tf.violations == [] and tf.coloring.palette_size <= 4
        checked += 1
    assert checked >= 40


def _random_subcubic_connected(rng, n):
    """Random path backbone plus extra edges that respect max degree 3."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set(tuple(sorted(p)) for p in zip(order, order[1:]))
    deg = {v: 0 for v in range(n)}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for _ in range(2 * n):
        u, v = rng.randrange(n), rng.randrange(n)
        e = (min(u, v), max(u, v))
        if u != v and e not in edges and deg[u] < 3 and deg[v] < 3:
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
    return Graph(n, sorted(edges))


def test_line_graphs_of_random_subcubic_color_within_bound():
    rng = random.Random(405)
    checked = 0
    for _ in range(40):
        root = _random_subcubic_connected(rng, rng.randint(5, 12))
        lg = line_graph(root)
        if lg.n == 0 or not is_connected(lg):
            continue
        result = color_general(lg, mode="strict")
        assert result.violations == []
        assert result.coloring.palette_size <= 24
        assert is_proper_coloring(lg, result.coloring)
        checked += 1
    assert checked >= 35


def test_thick_multipartite_families():
    from isk4color.families import complete_multipartite

    for parts in [(3, 3), (4, 7), (3, 3, 3), (2, 5, 6), (1, 1, 9)]:
        g = complete_multipartite(*parts)
        result = color_general(g, mode="strict")
        assert result.violations == []
        assert result.coloring.palette_size <= len(parts)
        assert is_proper_coloring(g, result.coloring)
