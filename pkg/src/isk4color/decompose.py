"""Cutset discovery, block construction, flat-path reduction, and coloring
recombination: the recursion skeleton of the two bounded colorers.

All searches return the lexicographically smallest witness (by sorted vertex
ids) so that decomposition traces are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    Coloring,
    bits,
    induced_subgraph,
    is_connected,
    is_proper_coloring,
    mask_of,
)
from .patterns import find_k4


class DecompositionError(RuntimeError):
    """Recursion depth guard tripped: decomposition failed to shrink the input."""


@dataclass(frozen=True)
class CliqueCutset:
    clique: tuple[int, ...]
    side_x: frozenset[int]
    side_y: frozenset[int]


@dataclass(frozen=True)
class Proper2Cutset:
    a: int
    b: int
    side_x: frozenset[int]
    side_y: frozenset[int]


@dataclass(frozen=True)
class FlatPath:
    """Induced path whose interior vertices have degree exactly 2 in the host."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def _components_without(g: Graph, removed_mask: int) -> list[int]:
    comps = []
    left = ((1 << g.n) - 1) & ~removed_mask
    while left:
        v = (left & -left).bit_length() - 1
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.mask(u)
            frontier = nxt & ~comp & ~removed_mask
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def _cliques_lex(g: Graph):
    """Cliques of size 1..3 in lexicographic order of their sorted vertex tuple."""
    for a in range(g.n):
        yield (a,)
        for b in bits(g.mask(a) >> (a + 1)):
            b += a + 1
            yield (a, b)
            for c in bits((g.mask(a) & g.mask(b)) >> (b + 1)):
                yield (a, b, b + 1 + c)


def find_clique_cutset(g: Graph) -> CliqueCutset | None:
    """First (lex) clique of size <= 3 whose removal disconnects g.

    Callers must pass connected, K4-free graphs; both are checked.  The K4
    bound is what caps clique cutsets at three vertices.
    """
    if not is_connected(g):
        raise ValueError("input must be connected")
    k4 = find_k4(g)
    if k4 is not None:
        raise ValueError(f"input contains a K4 {k4}; clique cutsets may exceed size 3")
    for clique in _cliques_lex(g):
        removed = mask_of(clique)
        comps = _components_without(g, removed)
        if len(comps) >= 2:
            x = frozenset(bits(comps[0]))
            y = frozenset(v for c in comps[1:] for v in bits(c))
            return CliqueCutset(clique, x, y)
    return None


def _is_ab_path(g: Graph, verts: set[int], a: int, b: int) -> bool:
    """Does ``verts`` induce a path graph whose two ends are a and b?"""
    vmask = mask_of(verts)
    degs = {v: (g.mask(v) & vmask).bit_count() for v in verts}
    if len(verts) == 2:
        return g.has_edge(a, b)
    if degs[a] != 1 or degs[b] != 1:
        return False
    if any(d != 2 for v, d in degs.items() if v not in (a, b)):
        return False
    # connected + degree profile of a path => a single a-b path
    sub, _ = induced_subgraph(g, verts)
    return is_connected(sub)


def find_proper_2cutset(g: Graph) -> Proper2Cutset | None:
    """First (lex) non-adjacent pair {a,b} with a component grouping such that
    neither side together with {a,b} induces an a-b path.

    Groupings tried: each single component against the rest and, when three or
    more components exist, each pair of components against the rest.  For up
    to three components this covers every bipartition; beyond that, one of
    these groupings succeeds whenever any does.
    """
    if not is_connected(g):
        raise ValueError("input must be connected")
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.has_edge(a, b):
                continue
            comps = _components_without(g, (1 << a) | (1 << b))
            if len(comps) < 2:
                continue
            groupings = [(i,) for i in range(len(comps))]
            if len(comps) >= 3:
                groupings += [(i, j) for i in range(len(comps)) for j in range(i + 1, len(comps))]
            for grouping in groupings:
                xm = 0
                for i in grouping:
                    xm |= comps[i]
                ym = 0
                for i in range(len(comps)):
                    if i not in grouping:
                        ym |= comps[i]
                xs = set(bits(xm))
                ys = set(bits(ym))
                if _is_ab_path(g, xs | {a, b}, a, b):
                    continue
                if _is_ab_path(g, ys | {a, b}, a, b):
                    continue
                return Proper2Cutset(a, b, frozenset(xs), frozenset(ys))
    return None


# ---------------------------------------------------------------------------
# flat paths


def is_flat_path(g: Graph, vertices) -> bool:
    vs = tuple(vertices)
    if len(vs) != len(set(vs)) or len(vs) < 2:
        return False
    for i, v in enumerate(vs):
        for j in range(i + 1, len(vs)):
            if g.has_edge(v, vs[j]) != (j == i + 1):
                return False
    return all(g.degree(v) == 2 for v in vs[1:-1])


def maximal_flat_paths(g: Graph) -> list[FlatPath]:
    """All maximal flat paths of length >= 2, each once (canonical orientation).

    Interior vertices are forced (degree exactly 2), so flat paths organize
    into maximal degree-2 chains; only the chain ends need case analysis.
    """
    out: set[tuple[int, ...]] = set()

    def emit(seq):
        if len(seq) >= 3:
            out.add(min(tuple(seq), tuple(reversed(seq))))

    seen_d2 = set()
    for v in range(g.n):
        if g.degree(v) != 2 or v in seen_d2:
            continue
        chain = _chain_through(g, v)
        closed = chain[0] == chain[-1]
        core = chain[:-1] if closed else chain
        seen_d2.update(u for u in core if g.degree(u) == 2)
        if closed:
            # pure cycle component, or a chain returning to one branch vertex:
            # the maximal flat paths are the rotations dropping one vertex,
            # minus those that would bury a branch vertex in the interior
            k = len(core)
            if k < 4:
                continue
            for i in range(k):
                sub = [core[(i + t) % k] for t in range(k - 1)]
                if all(g.degree(u) == 2 for u in sub[1:-1]):
                    emit(sub)
        elif g.has_edge(chain[0], chain[-1]):
            # chord between the two ends: drop either one
            emit(chain[:-1])
            emit(chain[1:])
        else:
            emit(chain)
    return [FlatPath(seq) for seq in sorted(out)]


def _chain_through(g: Graph, v: int) -> list[int]:
    """Maximal walk of degree-2 vertices through v, extended one vertex past
    each end; for a cycle component the walk closes (first == last)."""
    left_nbr, right_nbr = g.neighbors(v)
    chain = [v]
    for direction, first in ((0, left_nbr), (1, right_nbr)):
        prev, cur = v, first
        while True:
            if direction == 0:
                chain.insert(0, cur)
            else:
                chain.append(cur)
            if g.degree(cur) != 2 or (chain[0] == chain[-1] and len(chain) > 1):
                break
            a, b = g.neighbors(cur)
            prev, cur = cur, (b if a == prev else a)
        if chain[0] == chain[-1]:
            break
    return chain


def reduce_flat_path(g: Graph, path: FlatPath | tuple[int, ...]) -> tuple[Graph, tuple[int, ...]]:
    """Delete the interior of a flat path of length >= 2 and join its ends.

    Returns the new graph plus the map new id -> original id.
    """
    vs = tuple(path.vertices if isinstance(path, FlatPath) else path)
    if len(vs) < 3:
        raise ValueError("flat path must have length at least 2")
    if not is_flat_path(g, vs):
        raise ValueError(f"{vs} is not a flat path of the graph")
    interior = set(vs[1:-1])
    keep = [v for v in range(g.n) if v not in interior]
    pos = {v: i for i, v in enumerate(keep)}
    sub, ids = induced_subgraph(g, keep)
    masks = list(sub._adj)
    e0, e1 = pos[vs[0]], pos[vs[-1]]
    masks[e0] |= 1 << e1
    masks[e1] |= 1 << e0
    return Graph.from_masks(masks), ids


# ---------------------------------------------------------------------------
# blocks and merges


def build_2cutset_blocks(
    g: Graph, cut: Proper2Cutset
) -> tuple[Graph, tuple[int, ...], Graph, tuple[int, ...]]:
    """Blocks of a proper 2-cutset with a marker edge ab added to each side.

    The marker edge stands in for a reduced through-path on the other side and
    forces the two cut vertices to receive distinct colors.
    """
    _validate_2cutset(g, cut)
    blocks = []
    for side in (cut.side_x, cut.side_y):
        verts = sorted(side | {cut.a, cut.b})
        sub, ids = induced_subgraph(g, verts)
        pos = {v: i for i, v in enumerate(ids)}
        masks = list(sub._adj)
        ia, ib = pos[cut.a], pos[cut.b]
        masks[ia] |= 1 << ib
        masks[ib] |= 1 << ia
        blocks.append((Graph.from_masks(masks), ids))
    (bx, ix), (by, iy) = blocks
    return bx, ix, by, iy


def _validate_2cutset(g: Graph, cut: Proper2Cutset) -> None:
    if g.has_edge(cut.a, cut.b):
        raise ValueError("cut vertices are adjacent")
    if not cut.side_x or not cut.side_y:
        raise ValueError("cutset sides must be non-empty")
    all_verts = cut.side_x | cut.side_y | {cut.a, cut.b}
    if all_verts != set(range(g.n)) or cut.side_x & cut.side_y:
        raise ValueError("sides must partition the remaining vertices")
    for u in cut.side_x:
        if g.mask(u) & mask_of(cut.side_y):
            raise ValueError("edge crosses the cut")


def merge_colorings(
    g: Graph,
    c1: Coloring,
    ids1: tuple[int, ...],
    c2: Coloring,
    ids2: tuple[int, ...],
    shared,
) -> Coloring:
    """Combine block colorings that overlap on ``shared`` (host-graph ids).

    The shared vertices must be rainbow in both blocks (they induce a clique
    or a marker edge there); the second coloring is renamed by a color
    permutation so the two agree, then the union is taken.  The result uses
    max(palette1, palette2) colors and is proper on g whenever both inputs
    are proper on their blocks.
    """
    shared = sorted(shared)
    palette = max(c1.palette_size, c2.palette_size)
    if palette < len(shared):
        raise ValueError("palette smaller than the shared overlap")
    pos1 = {v: i for i, v in enumerate(ids1)}
    pos2 = {v: i for i, v in enumerate(ids2)}
    col1 = {v: c1.assignment[pos1[v]] for v in shared}
    col2 = {v: c2.assignment[pos2[v]] for v in shared}
    if len(set(col1.values())) != len(shared) or len(set(col2.values())) != len(shared):
        raise ValueError("shared vertices are not rainbow in both blocks")
    perm: dict[int, int] = {col2[v]: col1[v] for v in shared}
    free_targets = [c for c in range(palette) if c not in set(perm.values())]
    for c in range(palette):
        if c not in perm:
            perm[c] = free_targets.pop(0)
    assign = [-1] * g.n
    for i, v in enumerate(ids1):
        assign[v] = c1.assignment[i]
    for i, v in enumerate(ids2):
        assign[v] = perm[c2.assignment[i]]
    if any(c == -1 for c in assign):
        raise ValueError("blocks do not cover the host graph")
    merged = Coloring(tuple(assign), palette)
    if not is_proper_coloring(g, merged):
        raise ValueError("merged coloring is not proper; the overlap was not a clique")
    return merged
