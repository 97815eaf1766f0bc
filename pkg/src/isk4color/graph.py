"""Immutable simple graphs on dense integer vertex ids, plus the coloring
and layering primitives shared by every other module.

Adjacency is one arbitrary-precision int bitmask per vertex.  Python ints
serve both as the small-n fast path and as the general fallback, which keeps
the subset-sweeping oracles and the exhaustive enumerator fast without a
second representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

INFINITE_GIRTH = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph with vertex set 0..n-1, immutable after construction."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "Graph":
        """Build from per-vertex neighbor bitmasks (must already be symmetric, loop-free)."""
        g = object.__new__(cls)
        adj = tuple(masks)
        g.n = len(adj)
        g._adj = adj
        return g

    def mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self._adj[v]))

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bits(m)) for m in self._adj)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self._adj[u] >> (u + 1)):
                yield (u, u + 1 + v)

    @property
    def m(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph.from_masks(full & ~m & ~(1 << v) for v, m in enumerate(self._adj))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Coloring:
    """Total assignment vertex -> color index, drawn from 0..palette_size-1."""

    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        for v, c in enumerate(self.assignment):
            if not (0 <= c < self.palette_size):
                raise ValueError(f"color {c} of vertex {v} outside palette 0..{self.palette_size - 1}")

    def color_of(self, v: int) -> int:
        return self.assignment[v]


@dataclass(frozen=True)
class Layering:
    """BFS distance classes from ``root`` over the connected component of root.

    ``layers[i]`` holds exactly the vertices at distance i; no edge joins
    layers whose indices differ by two or more.
    """

    root: int
    layers: tuple[frozenset[int], ...]

    @property
    def component(self) -> frozenset[int]:
        out: set[int] = set()
        for layer in self.layers:
            out |= layer
        return frozenset(out)

    def layer_index(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}


def bfs_layering(g: Graph, root: int) -> Layering:
    """Distance classes of root's component; layer 0 is {root}."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range for n={g.n}")
    seen = 1 << root
    frontier = seen
    layers = [frozenset((root,))]
    while True:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.mask(v)
        nxt &= ~seen
        if not nxt:
            break
        layers.append(frozenset(bits(nxt)))
        seen |= nxt
        frontier = nxt
    return Layering(root, tuple(layers))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s`` plus the map new id -> original id (ids sorted)."""
    ids = tuple(sorted(set(s)))
    if ids and not (0 <= ids[0] and ids[-1] < g.n):
        raise ValueError("vertex set not contained in 0..n-1")
    pos = {v: i for i, v in enumerate(ids)}
    smask = mask_of(ids)
    masks = []
    for v in ids:
        m = 0
        for w in bits(g.mask(v) & smask):
            m |= 1 << pos[w]
        masks.append(m)
    return Graph.from_masks(masks), ids


def is_proper_coloring(g: Graph, coloring: Coloring) -> bool:
    """True iff no edge of g joins equal colors; raises if the assignment is not total."""
    if len(coloring.assignment) != g.n:
        raise ValueError(f"coloring covers {len(coloring.assignment)} vertices, graph has {g.n}")
    a = coloring.assignment
    return all(a[u] != a[v] for u, v in g.edges())


def shortest_cycle(g: Graph) -> list[int] | None:
    """A shortest cycle as a vertex list, or None for forests."""
    best: list[int] | None = None
    best_len = math.inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            if 2 * dist[frontier[0]] >= best_len:
                break
            nxt = []
            for v in frontier:
                dv = dist[v]
                for w in bits(g.mask(v)):
                    if w == parent[v]:
                        continue
                    if dist[w] == -1:
                        dist[w] = dv + 1
                        parent[w] = v
                        nxt.append(w)
                    elif dv + dist[w] + 1 < best_len:
                        cyc = _assemble_cycle(parent, v, w)
                        if cyc is not None:
                            best = cyc
                            best_len = len(cyc)
            frontier = nxt
    return best


def _assemble_cycle(parent, v, w):
    # Join the two root paths; reject if they overlap anywhere but the root
    # (a shorter cycle exists and is found from its own candidate edge).
    pv = [v]
    while parent[pv[-1]] != -1:
        pv.append(parent[pv[-1]])
    pw = [w]
    while parent[pw[-1]] != -1:
        pw.append(parent[pw[-1]])
    if set(pv) & set(pw) != {pv[-1]}:
        return None
    return pv + pw[-2::-1]


def girth(g: Graph) -> int | float:
    """Length of the shortest cycle; INFINITE_GIRTH for forests."""
    cyc = shortest_cycle(g)
    return INFINITE_GIRTH if cyc is None else len(cyc)


def find_cycle(g: Graph) -> list[int] | None:
    """Any cycle as a vertex list (DFS back edge), or None if g is a forest."""
    state = [0] * g.n  # 0 new, 1 on stack path, 2 done
    parent = [-1] * g.n
    for root in range(g.n):
        if state[root]:
            continue
        stack = [(root, iter(bits(g.mask(root))))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent[v]:
                    continue
                if state[w] == 1:
                    cyc = [v]
                    while cyc[-1] != w:
                        cyc.append(parent[cyc[-1]])
                    return cyc
                if state[w] == 0:
                    state[w] = 1
                    parent[w] = v
                    stack.append((w, iter(bits(g.mask(w)))))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return None


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Repeated minimum-degree removal order (ties to lowest id) and the degeneracy."""
    alive = (1 << g.n) - 1
    degs = [g.degree(v) for v in range(g.n)]
    order: list[int] = []
    degeneracy = 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda u: (degs[u], u))
        degeneracy = max(degeneracy, degs[v])
        order.append(v)
        alive &= ~(1 << v)
        for w in bits(g.mask(v) & alive):
            degs[w] -= 1
    return order, degeneracy


def greedy_coloring(g: Graph, order: Iterable[int] | None = None) -> Coloring:
    """First-fit coloring along ``order`` (default: reverse degeneracy order)."""
    if order is None:
        order = reversed(degeneracy_order(g)[0])
    assign = [-1] * g.n
    palette = 0
    for v in order:
        used = {assign[w] for w in bits(g.mask(v)) if assign[w] != -1}
        c = 0
        while c in used:
            c += 1
        assign[v] = c
        palette = max(palette, c + 1)
    return Coloring(tuple(assign), max(palette, 1) if g.n else 0)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by smallest member."""
    out: list[frozenset[int]] = []
    seen = 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.mask(u)
            frontier = nxt & ~comp
            comp |= frontier
        out.append(frozenset(bits(comp)))
        seen |= comp
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1
