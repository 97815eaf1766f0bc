"""Ground-truth brute force: induced-K4-subdivision search, exact chromatic
number, isomorph-free exhaustive enumeration of small graphs, the hole
attachment classifier, and the verification suite driver.

Everything here trades polynomial niceties for certainty at desk scale; the
enumeration is capped at n = 9 and the subset sweeps at n = 16.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .graph import (
    Graph,
    bfs_layering,
    bits,
    find_cycle,
    greedy_coloring,
    induced_subgraph,
    mask_of,
)

ENUMERATION_CAP = 9
SUBSET_SWEEP_CAP = 16


class SizeLimitError(ValueError):
    """Raised when an exhaustive operation is asked to exceed its size cap."""


# ---------------------------------------------------------------------------
# induced subdivisions of K4


@dataclass
class Isk4Witness:
    vertices: frozenset[int]
    branch: tuple[int, int, int, int]
    paths: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "branch": list(self.branch),
            "paths": [list(p) for p in self.paths],
        }


def _subdivision_witness(g: Graph, subset) -> Isk4Witness | None:
    """Check that ``subset`` induces a subdivision of K4 (branch degrees 3,
    chain interiors degree 2, suppression yields a simple K4)."""
    vs = sorted(subset)
    vmask = mask_of(vs)
    branch = []
    for v in vs:
        d = (g.mask(v) & vmask).bit_count()
        if d == 3:
            branch.append(v)
        elif d != 2:
            return None
    if len(branch) != 4:
        return None
    # connectivity within the subset
    comp = 1 << vs[0]
    frontier = comp
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.mask(u) & vmask
        frontier = nxt & ~comp
        comp |= frontier
    if comp != vmask:
        return None
    chains = _branch_chains(g, vs, branch)
    if chains is None or len(chains) != 6:
        return None
    if set(chains) != {tuple(p) for p in combinations(branch, 2)}:
        return None
    paths = tuple(tuple(chains[p]) for p in sorted(chains))
    return Isk4Witness(frozenset(vs), tuple(branch), paths)


def _branch_chains(g: Graph, vs, branch):
    vmask = mask_of(vs)
    bset = set(branch)
    chains = {}
    for b in branch:
        for w in bits(g.mask(b) & vmask):
            path = [b, w]
            prev, cur = b, w
            while cur not in bset:
                if len(path) > len(vs) + 1:
                    return None
                nbrs = [x for x in bits(g.mask(cur) & vmask) if x != prev]
                if len(nbrs) != 1:
                    return None
                prev, cur = cur, nbrs[0]
                path.append(cur)
            if path[0] == path[-1]:
                return None
            if path[0] > path[-1]:
                continue
            key = (path[0], path[-1])
            if key in chains:
                return None  # two parallel connections: a theta, not K4
            chains[key] = path
    return chains


def _two_core(g: Graph) -> list[int]:
    alive = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if (g.mask(v) & alive).bit_count() < 2:
                alive &= ~(1 << v)
                changed = True
    return list(bits(alive))


def contains_isk4(g: Graph, *, limit: int | None = SUBSET_SWEEP_CAP) -> Isk4Witness | None:
    """Sweep vertex subsets in increasing size for an induced subdivision of
    K4; witnesses are therefore minimum-size.  ``limit=None`` lifts the cap."""
    if limit is not None and g.n > limit:
        raise SizeLimitError(f"n={g.n} exceeds the subset-sweep cap {limit} (pass limit=None to override)")
    if g.m < 6:
        return None
    # every vertex of a K4 subdivision keeps degree >= 2 inside it, so the
    # witness lives in the 2-core; branch vertices need core degree >= 3
    core = _two_core(g)
    cmask = mask_of(core)
    if sum(1 for v in core if (g.mask(v) & cmask).bit_count() >= 3) < 4:
        return None
    for size in range(4, len(core) + 1):
        for subset in combinations(core, size):
            w = _subdivision_witness(g, subset)
            if w is not None:
                return w
    return None


def contains_isk4_anchored(g: Graph) -> Isk4Witness | None:
    """Independent second search: anchor the four branch vertices, then grow
    six internally disjoint connecting paths and verify the union."""
    cands = [v for v in range(g.n) if g.degree(v) >= 3]
    for branch in combinations(cands, 4):
        w = _anchored_paths(g, branch)
        if w is not None:
            return w
    return None


_PAIR_ORDER = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _anchored_paths(g: Graph, branch) -> Isk4Witness | None:
    bmask = mask_of(branch)

    def rec(pair_idx, used_interior, paths):
        if pair_idx == 6:
            verts = set(branch)
            for p in paths:
                verts.update(p)
            return _subdivision_witness(g, verts)
        i, j = _PAIR_ORDER[pair_idx]
        a, b = branch[i], branch[j]
        stack = [([a], 0)]
        while stack:
            path, used = stack.pop()
            last = path[-1]
            if g.has_edge(last, b):
                res = rec(pair_idx + 1, used_interior | used, paths + [path + [b]])
                if res is not None:
                    return res
            free = g.mask(last) & ~bmask & ~used & ~used_interior
            for w in bits(free):
                stack.append((path + [w], used | (1 << w)))
        return None

    return rec(0, 0, [])


# ---------------------------------------------------------------------------
# exact chromatic number


def _greedy_clique(g: Graph) -> int:
    best = 0
    for v in range(g.n):
        clique = 1 << v
        cand = g.mask(v)
        while cand:
            u = (cand & -cand).bit_length() - 1
            clique |= 1 << u
            cand &= g.mask(u)
        best = max(best, clique.bit_count())
    return best


def chromatic_number_exact(g: Graph, *, limit: int | None = SUBSET_SWEEP_CAP) -> int:
    """Exact chromatic number by iterative deepening over k with canonical
    first-use pruning on the color classes."""
    if limit is not None and g.n > limit:
        raise SizeLimitError(f"n={g.n} exceeds the exact-coloring cap {limit}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    upper = greedy_coloring(g).palette_size
    for k in range(max(2, _greedy_clique(g)), upper + 1):
        if _colorable(g, order, k):
            return k
    return upper


def _colorable(g: Graph, order, k) -> bool:
    n = g.n
    assign = [-1] * n

    def rec(idx, used):
        if idx == n:
            return True
        v = order[idx]
        forbidden = {assign[w] for w in bits(g.mask(v)) if assign[w] != -1}
        cap = min(used + 1, k)
        for c in range(cap):
            if c in forbidden:
                continue
            assign[v] = c
            if rec(idx + 1, max(used, c + 1)):
                return True
        assign[v] = -1
        return False

    return rec(0, 0)


# ---------------------------------------------------------------------------
# canonical forms and isomorph-free enumeration


def _refine(masks: tuple[int, ...]) -> list[int]:
    n = len(masks)
    colors = [m.bit_count() for m in masks]
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(masks[v])))) for v in range(n)]
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranked[s] for s in sigs]
        if len(ranked) == ncls:
            return colors
        ncls = len(ranked)


def _min_encoding(masks: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically minimal row encoding over permutations that respect
    the invariant refinement partition."""
    n = len(masks)
    if n == 0:
        return ()
    colors = _refine(masks)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    cell_order = [cells[c] for c in sorted(cells)]
    slots: list[list[int]] = []
    for cell in cell_order:
        slots.extend([cell] * len(cell))

    best: list[int] | None = None
    placed: list[int] = []
    rows: list[int] = []
    in_use = 0

    def dfs(p):
        nonlocal best, in_use
        if p == n:
            best = rows.copy()
            return
        cand = []
        for v in slots[p]:
            if in_use >> v & 1:
                continue
            row = 0
            for q, u in enumerate(placed):
                if masks[v] >> u & 1:
                    row |= 1 << q
            cand.append((row, v))
        cand.sort()
        seen_open: set[int] = set()
        seen_closed: set[int] = set()
        for row, v in cand:
            if best is not None:
                if row > best[p]:
                    break
                if row < best[p]:
                    best = None  # this branch strictly improves; rebuild below
            # twins are interchangeable by an automorphism fixing everything
            # else, so one representative per twin class suffices
            open_key = masks[v]
            closed_key = masks[v] | (1 << v)
            if open_key in seen_open or closed_key in seen_closed:
                continue
            seen_open.add(open_key)
            seen_closed.add(closed_key)
            placed.append(v)
            rows.append(row)
            in_use |= 1 << v
            dfs(p + 1)
            in_use &= ~(1 << v)
            rows.pop()
            placed.pop()

    dfs(0)
    assert best is not None
    return tuple(best)


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism-invariant key: (n, minimal row encoding)."""
    return (g.n, _min_encoding(g._adj))


def _graph_from_rows(rows: tuple[int, ...]) -> Graph:
    n = len(rows)
    masks = [0] * n
    for p in range(n):
        for q in bits(rows[p]):
            masks[p] |= 1 << q
            masks[q] |= 1 << p
    return Graph.from_masks(masks)


def canonical_graph(g: Graph) -> Graph:
    return _graph_from_rows(_min_encoding(g._adj))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)


def _new_vertex_ok_triangle_free(masks, new_mask) -> bool:
    for u in bits(new_mask):
        if masks[u] & new_mask:
            return False
    return True


def _new_vertex_ok_girth5(masks, new_mask) -> bool:
    nbrs = list(bits(new_mask))
    for i, u in enumerate(nbrs):
        if masks[u] & new_mask:
            return False  # triangle through the new vertex
        for v in nbrs[i + 1 :]:
            if masks[u] & masks[v]:
                return False  # C4 through the new vertex
    return True


_EXTENSION_FILTERS: dict[str, Callable] = {
    "triangle-free": _new_vertex_ok_triangle_free,
    "girth5": _new_vertex_ok_girth5,
}


def enumerate_graphs(
    n: int,
    *,
    connected: bool = False,
    triangle_free: bool = False,
    _hereditary: str | None = None,
) -> Iterator[Graph]:
    """All graphs on n vertices, one canonical representative per isomorphism
    class, in sorted canonical order.

    Generation extends each (n-1)-vertex class by a new vertex and keeps one
    representative per canonical form.  ``connected`` restricts to connected
    graphs (valid because every connected graph has a non-cut vertex);
    ``triangle_free`` prunes during generation (the class is hereditary).
    """
    if n > ENUMERATION_CAP:
        raise SizeLimitError(f"enumeration is capped at n={ENUMERATION_CAP}")
    if n < 1:
        return
    keep = _EXTENSION_FILTERS["triangle-free"] if triangle_free else None
    if _hereditary is not None:
        keep = _EXTENSION_FILTERS[_hereditary]
    level = {(0,): (0,)}  # canonical rows -> masks
    for size in range(2, n + 1):
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        lo = 1 if connected else 0
        for masks in level.values():
            for new_mask in range(lo, 1 << (size - 1)):
                if keep is not None and not keep(masks, new_mask):
                    continue
                grown = [m | ((new_mask >> v & 1) << (size - 1)) for v, m in enumerate(masks)]
                grown.append(new_mask)
                rows = _min_encoding(tuple(grown))
                if rows not in nxt:
                    nxt[rows] = tuple(grown)
        level = nxt
    for rows in sorted(level):
        yield _graph_from_rows(rows)


# ---------------------------------------------------------------------------
# hole attachment classification


@dataclass
class HoleAttachmentClassification:
    output_case: int
    attachers: tuple[int, ...]
    hole_vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "case": self.output_case,
            "attachers": list(self.attachers),
            "hole_vertices": list(self.hole_vertices),
        }


def classify_hole_attachment(g: Graph, hole: Iterable[int], s: Iterable[int]) -> HoleAttachmentClassification | None:
    """Match a dominating attachment set against the three structural outcomes:

    1. four attachers with distinct single neighbors on the hole;
    2. three attachers with pairwise non-adjacent single neighbors;
    3. two single-neighbor attachers separated on the hole by the two
       neighbors of a third attacher.

    Returns None when no case matches (the host graph then lies outside the
    {K4-subdivision, triangle, K_{3,3}}-free class, or the inputs are wrong).
    """
    order = tuple(hole)
    sset = sorted(set(s))
    _check_attachment_preconditions(g, order, sset)
    hmask = mask_of(order)
    pos = {v: i for i, v in enumerate(order)}
    singles: dict[int, list[int]] = {}
    for u in sset:
        nb = g.mask(u) & hmask
        if nb.bit_count() == 1:
            singles.setdefault(nb.bit_length() - 1, []).append(u)
    single_points = sorted(singles)

    # case 1: four distinct private attachment points
    if len(single_points) >= 4:
        vs = single_points[:4]
        return HoleAttachmentClassification(1, tuple(singles[v][0] for v in vs), tuple(vs))

    # case 2: three pairwise non-adjacent attachment points
    L = len(order)
    for trio in combinations(single_points, 3):
        ps = [pos[v] for v in trio]
        if all((a - b) % L not in (1, L - 1) for a, b in combinations(ps, 2)):
            return HoleAttachmentClassification(2, tuple(singles[v][0] for v in trio), tuple(trio))

    # case 3: a two-neighbor attacher whose hole neighbors separate two
    # single-neighbor attachment points
    for u3 in sset:
        nb = g.mask(u3) & hmask
        if nb.bit_count() != 2:
            continue
        v3, v3p = sorted(bits(nb))
        i, j = sorted((pos[v3], pos[v3p]))
        arc_a = {order[t] for t in range(i + 1, j)}
        arc_b = {order[t % L] for t in range(j + 1, i + L)}
        for v1 in single_points:
            for v2 in single_points:
                if v1 == v2:
                    continue
                if v1 in arc_a and v2 in arc_b:
                    u1 = singles[v1][0]
                    u2 = next(u for u in singles[v2] if u != u1)
                    if u1 == u3 or u2 == u3:
                        continue
                    return HoleAttachmentClassification(3, (u1, u2, u3), (v1, v2, v3, v3p))
    return None


def _check_attachment_preconditions(g, order, sset):
    from .patterns import _hole_order_of

    if _hole_order_of(g, order) is None:
        raise ValueError("the given vertices do not form a hole")
    hset = set(order)
    if hset & set(sset):
        raise ValueError("attachment set intersects the hole")
    hmask = mask_of(order)
    covered = 0
    for u in sset:
        nb = g.mask(u) & hmask
        if not nb:
            raise ValueError(f"attacher {u} has no neighbor on the hole")
        covered |= nb
    if covered != hmask:
        raise ValueError("attachment set does not dominate the hole")


# ---------------------------------------------------------------------------
# layer forests


@dataclass
class LayerCycleWitness:
    root: int
    layer: int
    cycle: tuple[int, ...]


def verify_layer_forests(g: Graph) -> LayerCycleWitness | None:
    """Check that every BFS layer from every root induces a forest; returns
    the first violating cycle, or None when all layers are acyclic."""
    for root in range(g.n):
        layering = bfs_layering(g, root)
        for i, layer in enumerate(layering.layers):
            if i == 0:
                continue
            sub, ids = induced_subgraph(g, layer)
            cyc = find_cycle(sub)
            if cyc is not None:
                return LayerCycleWitness(root, i, tuple(ids[v] for v in cyc))
    return None


__all__ = [
    "ENUMERATION_CAP",
    "SUBSET_SWEEP_CAP",
    "SizeLimitError",
    "Isk4Witness",
    "contains_isk4",
    "contains_isk4_anchored",
    "chromatic_number_exact",
    "canonical_form",
    "canonical_graph",
    "are_isomorphic",
    "enumerate_graphs",
    "HoleAttachmentClassification",
    "classify_hole_attachment",
    "LayerCycleWitness",
    "verify_layer_forests",
]
