"""Detectors for the named induced structures the colorers case-split on:
triangles, holes, K_{3,3}, K_{2,2,2}, prisms, boats, wheels, rich squares,
complete multipartite shapes, and line graphs of subcubic roots.

Every detector returns a witness that passes its standalone checker
(``verify_witness``).  Hole-driven detectors enumerate holes explicitly and
are exponential in the worst case; they are meant for desk-scale graphs
(roughly n <= 14 for hole-complete searches).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator

from .graph import Graph, bits, connected_components, induced_subgraph, is_connected, mask_of

PATTERN_KINDS = (
    "triangle",
    "c4",
    "hole",
    "k33",
    "k222",
    "prism",
    "boat",
    "four_wheel",
    "wheel",
    "rich_square",
)


@dataclass
class PatternWitness:
    kind: str
    vertices: frozenset[int]
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "vertices": sorted(self.vertices)}
        for k, v in sorted(self.extra.items()):
            out[k] = list(v) if isinstance(v, (tuple, frozenset, set)) else v
        return out


@dataclass
class MultipartiteShape:
    """Complete bipartite/tripartite split; thick iff two parts have size >= 3."""

    parts: tuple[tuple[int, ...], ...]
    thick: bool


@dataclass
class KrauszPartition:
    """Edge-disjoint cliques (size <= 3) covering all edges, every vertex in <= 2
    of them, together with the reconstructed subcubic root graph."""

    cliques: tuple[tuple[int, ...], ...]
    membership: dict[int, tuple[int, ...]]
    root: Graph
    root_edge_of: dict[int, tuple[int, int]]


# ---------------------------------------------------------------------------
# simple detectors


def find_triangle(g: Graph) -> PatternWitness | None:
    for u, v in g.edges():
        common = g.mask(u) & g.mask(v)
        for w in bits(common):
            if w > v:
                return PatternWitness("triangle", frozenset((u, v, w)))
    return None


def find_k4(g: Graph) -> tuple[int, int, int, int] | None:
    """Smallest-lex 4-clique, or None."""
    for u, v in g.edges():
        common = g.mask(u) & g.mask(v)
        for w in bits(common):
            if w <= v:
                continue
            for x in bits(common & g.mask(w)):
                if x > w:
                    return (u, v, w, x)
    return None


def enumerate_holes(g: Graph, min_len: int = 4, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each hole (induced cycle, length >= 4) exactly once, as a cyclic
    vertex tuple starting at its minimum vertex."""
    if min_len < 4:
        raise ValueError("holes have at least four vertices")
    n = g.n
    for s in range(n):
        ns = g.mask(s)
        higher = ns >> (s + 1)
        snbrs = [s + 1 + b for b in bits(higher)]
        for ai, a in enumerate(snbrs):
            # path grows from a; may close at any later neighbor of s
            closers = mask_of(snbrs[ai + 1 :])
            stack = [([a], mask_of([s, a]))]
            while stack:
                path, used = stack.pop()
                last = path[-1]
                plen = len(path)
                if max_len is not None and plen + 2 > max_len:
                    continue
                forbidden = used | (ns & ~closers)
                blocked = 0
                for p in path[:-1]:
                    blocked |= g.mask(p)
                cand = g.mask(last) & ~forbidden & ~blocked & ~((1 << (s + 1)) - 1)
                for w in bits(cand):
                    if ns >> w & 1:
                        if plen >= 2 and plen + 2 >= min_len:
                            yield tuple([s] + path + [w])
                    else:
                        stack.append((path + [w], used | (1 << w)))


def find_hole(g: Graph, min_len: int = 4, max_len: int | None = None) -> PatternWitness | None:
    for order in enumerate_holes(g, min_len, max_len):
        return PatternWitness("hole", frozenset(order), {"order": order})
    return None


def _stable_triples(g: Graph) -> Iterator[tuple[int, int, int]]:
    full = (1 << g.n) - 1
    for a in range(g.n):
        non_a = full & ~g.mask(a)
        for b in range(a + 1, g.n):
            if g.mask(a) >> b & 1:
                continue
            non_ab = non_a & ~g.mask(b)
            for c in bits(non_ab >> (b + 1)):
                yield (a, b, b + 1 + c)


def find_k33(g: Graph) -> PatternWitness | None:
    for a1, a2, a3 in _stable_triples(g):
        common = g.mask(a1) & g.mask(a2) & g.mask(a3)
        if common.bit_count() < 3:
            continue
        cverts = list(bits(common))
        for b1, b2, b3 in combinations(cverts, 3):
            if g.has_edge(b1, b2) or g.has_edge(b1, b3) or g.has_edge(b2, b3):
                continue
            verts = frozenset((a1, a2, a3, b1, b2, b3))
            return PatternWitness("k33", verts, {"parts": ((a1, a2, a3), (b1, b2, b3))})
    return None


def find_k222(g: Graph) -> PatternWitness | None:
    n = g.n
    for a1 in range(n):
        for a2 in range(a1 + 1, n):
            if g.has_edge(a1, a2):
                continue
            c1 = g.mask(a1) & g.mask(a2)
            for b1 in bits(c1):
                for b2 in bits(c1 >> (b1 + 1)):
                    b2 += b1 + 1
                    if g.has_edge(b1, b2):
                        continue
                    c2 = c1 & g.mask(b1) & g.mask(b2)
                    for d1 in bits(c2):
                        for d2 in bits(c2 >> (d1 + 1)):
                            d2 += d1 + 1
                            if not g.has_edge(d1, d2):
                                pairs = ((a1, a2), (b1, b2), (d1, d2))
                                verts = frozenset((a1, a2, b1, b2, d1, d2))
                                return PatternWitness("k222", verts, {"pairs": pairs})
    return None


# ---------------------------------------------------------------------------
# prisms


def _triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges():
        for w in bits(g.mask(u) & g.mask(v)):
            if w > v:
                out.append((u, v, w))
    return out


def check_prism(g: Graph, vertices) -> dict | None:
    """Validate that ``vertices`` induces a prism; returns the triangle/path
    annotation or None."""
    vs = sorted(set(vertices))
    if len(vs) < 6:
        return None
    vmask = mask_of(vs)
    degs = {v: (g.mask(v) & vmask).bit_count() for v in vs}
    branch = sorted(v for v, d in degs.items() if d == 3)
    if len(branch) != 6 or any(d not in (2, 3) for d in degs.values()):
        return None
    sub, _ = induced_subgraph(g, vs)
    if not is_connected(sub):
        return None
    chains = _suppress_chains(g, vs, branch)
    if chains is None or len(chains) != 9:
        return None
    # the two triangles must consist of direct edges; the cross chains form a
    # perfect matching between them
    direct = {pair for pair, path in chains.items() if len(path) == 2}
    for t1 in combinations(branch, 3):
        t1_edges = {tuple(sorted(p)) for p in combinations(t1, 2)}
        if not t1_edges <= direct:
            continue
        t2 = tuple(v for v in branch if v not in t1)
        t2_edges = {tuple(sorted(p)) for p in combinations(t2, 2)}
        if not t2_edges <= direct:
            continue
        cross = [pair for pair in chains if pair not in t1_edges and pair not in t2_edges]
        if len(cross) != 3:
            continue
        if sorted(v for pair in cross for v in pair) != branch:
            continue
        paths = tuple(sorted(tuple(chains[p]) for p in cross))
        return {"triangles": (t1, t2), "paths": paths}
    return None


def _suppress_chains(g: Graph, vs, branch):
    """Chains between degree-3 vertices in G[vs]; None if a chain closes on
    itself or the suppressed multigraph has parallel edges."""
    vmask = mask_of(vs)
    bset = set(branch)
    chains: dict[tuple[int, int], list[int]] = {}
    seen_interior: set[int] = set()
    for b in branch:
        for w in bits(g.mask(b) & vmask):
            path = [b, w]
            prev = b
            cur = w
            while cur not in bset:
                if len(path) > len(vs) + 1:
                    return None
                nbrs = [x for x in bits(g.mask(cur) & vmask) if x != prev]
                if len(nbrs) != 1:
                    return None
                prev, cur = cur, nbrs[0]
                path.append(cur)
            if path[0] == path[-1]:
                return None  # chain loops back to its own branch vertex
            if path[0] > path[-1]:
                continue  # record each chain from its lower endpoint only
            key = (path[0], path[-1])
            if key in chains:
                return None  # parallel connection after suppression
            chains[key] = path
            seen_interior.update(path[1:-1])
    if seen_interior != set(vs) - bset:
        return None
    return chains


def find_prism(g: Graph) -> PatternWitness | None:
    tris = _triangles(g)
    for i, t1 in enumerate(tris):
        for t2 in tris[i + 1 :]:
            if set(t1) & set(t2):
                continue
            w = _prism_between(g, t1, t2)
            if w is not None:
                return w
    return None


def _prism_between(g: Graph, t1, t2) -> PatternWitness | None:
    blocked_base = mask_of(t1) | mask_of(t2)
    for perm in permutations(t2):
        found = _prism_paths(g, t1, perm, 0, blocked_base, [])
        if found is not None:
            verts = set(t1) | set(t2)
            for p in found:
                verts.update(p)
            ann = check_prism(g, verts)
            if ann is not None:
                return PatternWitness("prism", frozenset(verts), ann)
    return None


def _prism_paths(g, t1, t2, idx, blocked, acc):
    if idx == 3:
        return list(acc)
    a, b = t1[idx], t2[idx]
    # DFS over simple a-b paths with interior outside both triangles and
    # earlier path interiors; the final structural check rejects bad unions.
    stack = [([a], 1 << a)]
    while stack:
        path, used = stack.pop()
        last = path[-1]
        if g.has_edge(last, b):
            res = _prism_paths(g, t1, t2, idx + 1, blocked | used | (1 << b), acc + [path + [b]])
        else:
            res = None
        if res is not None:
            return res
        for w in bits(g.mask(last) & ~(blocked | used)):
            if w == b:
                continue
            stack.append((path + [w], used | (1 << w)))
    return None


# ---------------------------------------------------------------------------
# hole-plus-apex detectors


def _consecutive_on_hole(order: tuple[int, ...], nbr_positions: list[int]) -> bool:
    L = len(order)
    pos = set(nbr_positions)
    if len(pos) != 4:
        return False
    return any({(r + k) % L for k in range(4)} == pos for r in range(L))


def find_wheel(g: Graph) -> PatternWitness | None:
    """Hole plus an outside vertex with at least three neighbors on it."""
    for order in enumerate_holes(g):
        hmask = mask_of(order)
        for x in range(g.n):
            if hmask >> x & 1:
                continue
            if (g.mask(x) & hmask).bit_count() >= 3:
                return PatternWitness("wheel", frozenset(order) | {x}, {"hub": x, "hole": order})
    return None


def find_boat(g: Graph) -> PatternWitness | None:
    """Hole plus an outside vertex with exactly four consecutive neighbors on it."""
    for order in enumerate_holes(g):
        hmask = mask_of(order)
        for x in range(g.n):
            if hmask >> x & 1:
                continue
            nbrs = g.mask(x) & hmask
            if nbrs.bit_count() != 4:
                continue
            positions = [i for i, v in enumerate(order) if nbrs >> v & 1]
            if _consecutive_on_hole(order, positions):
                return PatternWitness("boat", frozenset(order) | {x}, {"hub": x, "hole": order})
    return None


def find_four_wheel(g: Graph) -> PatternWitness | None:
    """Induced C4 plus an outside vertex complete to it."""
    for order in enumerate_holes(g, 4, 4):
        hmask = mask_of(order)
        for x in range(g.n):
            if hmask >> x & 1:
                continue
            if g.mask(x) & hmask == hmask:
                return PatternWitness("four_wheel", frozenset(order) | {x}, {"hub": x, "hole": order})
    return None


# ---------------------------------------------------------------------------
# complete multipartite recognition


def recognize_thick_multipartite(g: Graph) -> MultipartiteShape | None:
    """Parts of a complete bipartite/tripartite split of g, or None."""
    if g.n == 0:
        return None
    comp = g.complement()
    comps = connected_components(comp)
    if len(comps) not in (2, 3):
        return None
    parts = []
    for cset in comps:
        cs = sorted(cset)
        for u, v in combinations(cs, 2):
            if not comp.has_edge(u, v):
                return None
        parts.append(tuple(cs))
    parts.sort(key=lambda p: p[0])
    thick = sum(1 for p in parts if len(p) >= 3) >= 2
    return MultipartiteShape(tuple(parts), thick)


# ---------------------------------------------------------------------------
# rich squares


def _path_order(g: Graph, comp: frozenset[int]) -> list[int] | None:
    """Vertex order of the induced path on comp, or None if it is not a path."""
    cs = sorted(comp)
    cmask = mask_of(cs)
    if len(cs) == 1:
        return cs
    degs = {v: (g.mask(v) & cmask).bit_count() for v in cs}
    ends = sorted(v for v, d in degs.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in degs.values()):
        return None
    order = [ends[0]]
    prev = -1
    while True:
        nxt = [w for w in bits(g.mask(order[-1]) & cmask) if w != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    return order if len(order) == len(cs) and order[-1] == ends[1] else None


def _link_of(g: Graph, square: tuple[int, ...], comp: frozenset[int]) -> tuple[int, ...] | None:
    """The component as an oriented link path of the square, or None."""
    u1, u2, u3, u4 = square
    smask = mask_of(square)
    order = _path_order(g, comp)
    if order is None:
        return None
    if len(order) == 1:
        p = order[0]
        return tuple(order) if g.mask(p) & smask == smask else None
    head = g.mask(order[0]) & smask
    tail = g.mask(order[-1]) & smask
    for v in order[1:-1]:
        if g.mask(v) & smask:
            return None
    pairings = (
        (mask_of((u1, u2)), mask_of((u3, u4))),
        (mask_of((u1, u4)), mask_of((u2, u3))),
    )
    for a, b in pairings:
        if head == a and tail == b:
            return tuple(order)
        if head == b and tail == a:
            return tuple(reversed(order))
    return None


def check_rich_square(g: Graph, square: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
    """If g is a rich square with this square, return its link paths."""
    u1, u2, u3, u4 = square
    ring = [(u1, u2), (u2, u3), (u3, u4), (u4, u1)]
    if not all(g.has_edge(a, b) for a, b in ring):
        return None
    if g.has_edge(u1, u3) or g.has_edge(u2, u4):
        return None
    rest = set(range(g.n)) - set(square)
    if not rest:
        return None
    sub, ids = induced_subgraph(g, rest)
    comps = [frozenset(ids[v] for v in c) for c in connected_components(sub)]
    if len(comps) < 2:
        return None
    links = []
    for comp in comps:
        link = _link_of(g, square, comp)
        if link is None:
            return None
        links.append(link)
    return tuple(sorted(links))


def find_rich_square(g: Graph) -> PatternWitness | None:
    """Check whether g itself is a rich square (not embedded detection)."""
    for order in enumerate_holes(g, 4, 4):
        links = check_rich_square(g, order)
        if links is not None:
            return PatternWitness(
                "rich_square", frozenset(range(g.n)), {"square": order, "links": links}
            )
    return None


# ---------------------------------------------------------------------------
# line graphs of subcubic roots


def recognize_line_graph_subcubic(g: Graph) -> KrauszPartition | None:
    """Partition of g's edges into cliques of size <= 3 with every vertex in at
    most two of them, plus the reconstructed root H with max degree <= 3 such
    that the line graph of H is g.  None when no such partition exists.
    """
    if not is_connected(g):
        raise ValueError("input must be connected")
    if g.n == 0:
        return KrauszPartition((), {}, Graph(1), {})
    if g.n == 1:
        root = Graph(2, [(0, 1)])
        return KrauszPartition((), {0: ()}, root, {0: (0, 1)})
    if any(g.degree(v) > 4 for v in range(g.n)):
        return None

    seed = max(range(g.n), key=lambda v: (g.degree(v), -v))
    edge_list = sorted(g.edges(), key=lambda e: (e[0] != seed and e[1] != seed, e))
    assignment = _krausz_search(g, edge_list, 0, {}, [0] * g.n)
    if assignment is None:
        return None
    return _build_krausz(g, assignment)


def _krausz_search(g, edge_list, idx, edge_clique, clique_count):
    while idx < len(edge_list) and edge_list[idx] in edge_clique:
        idx += 1
    if idx == len(edge_list):
        return dict(edge_clique)
    u, v = edge_list[idx]
    if clique_count[u] >= 2 or clique_count[v] >= 2:
        return None
    candidates = []
    for w in bits(g.mask(u) & g.mask(v)):
        if clique_count[w] >= 2:
            continue
        e1 = (min(u, w), max(u, w))
        e2 = (min(v, w), max(v, w))
        if e1 in edge_clique or e2 in edge_clique:
            continue
        candidates.append((u, v, w))
    candidates.append((u, v))
    for cl in candidates:
        members = sorted(cl)
        new_edges = [tuple(sorted(p)) for p in combinations(members, 2)]
        for e in new_edges:
            edge_clique[e] = tuple(members)
        for x in members:
            clique_count[x] += 1
        res = _krausz_search(g, edge_list, idx, edge_clique, clique_count)
        if res is not None:
            return res
        for e in new_edges:
            del edge_clique[e]
        for x in members:
            clique_count[x] -= 1
    return None


def _build_krausz(g, edge_clique):
    cliques = sorted(set(edge_clique.values()))
    index = {c: i for i, c in enumerate(cliques)}
    membership: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for c in cliques:
        for v in c:
            membership[v].append(index[c])
    nxt = len(cliques)
    root_edge_of = {}
    for v in range(g.n):
        slots = membership[v]
        if len(slots) == 1:
            slots = slots + [nxt]
            nxt += 1
        elif not slots:
            slots = [nxt, nxt + 1]
            nxt += 2
        root_edge_of[v] = (slots[0], slots[1])
    root = Graph(nxt, sorted(root_edge_of.values()))
    return KrauszPartition(
        tuple(cliques),
        {v: tuple(m) for v, m in membership.items()},
        root,
        root_edge_of,
    )


# ---------------------------------------------------------------------------
# standalone witness checkers


def _hole_order_of(g: Graph, vertices) -> tuple[int, ...] | None:
    vs = sorted(set(vertices))
    if len(vs) < 4:
        return None
    vmask = mask_of(vs)
    if any((g.mask(v) & vmask).bit_count() != 2 for v in vs):
        return None
    start = vs[0]
    order = [start]
    prev = -1
    while True:
        nbrs = [w for w in bits(g.mask(order[-1]) & vmask) if w != prev]
        if not nbrs:
            return None
        nxt = min(nbrs) if len(order) == 1 else nbrs[0]
        if nxt == start:
            break
        prev = order[-1]
        order.append(nxt)
        if len(order) > len(vs):
            return None
    return tuple(order) if len(order) == len(vs) else None


def verify_witness(g: Graph, w: PatternWitness) -> bool:
    """Definition-level validation of a pattern witness."""
    vs = sorted(w.vertices)
    if w.kind == "triangle":
        return len(vs) == 3 and all(g.has_edge(a, b) for a, b in combinations(vs, 2))
    if w.kind in ("hole", "c4"):
        order = _hole_order_of(g, vs)
        return order is not None and (w.kind != "c4" or len(order) == 4)
    if w.kind == "k33":
        return _check_k33_set(g, vs)
    if w.kind == "k222":
        return _check_k222_set(g, vs)
    if w.kind == "prism":
        return check_prism(g, vs) is not None
    if w.kind in ("wheel", "boat", "four_wheel"):
        hub = w.extra["hub"]
        order = _hole_order_of(g, set(vs) - {hub})
        if order is None:
            return False
        count = (g.mask(hub) & mask_of(order)).bit_count()
        if w.kind == "wheel":
            return count >= 3
        positions = [i for i, v in enumerate(order) if g.has_edge(hub, v)]
        if w.kind == "boat":
            return count == 4 and _consecutive_on_hole(order, positions)
        return len(order) == 4 and count == 4
    if w.kind == "rich_square":
        square = tuple(w.extra["square"])
        return set(vs) == set(range(g.n)) and check_rich_square(g, square) is not None
    raise ValueError(f"unknown witness kind {w.kind!r}")


def _check_k33_set(g: Graph, vs) -> bool:
    if len(vs) != 6:
        return False
    sub, _ = induced_subgraph(g, vs)
    if sub.m != 9:
        return False
    shape = recognize_thick_multipartite(sub)
    return shape is not None and sorted(len(p) for p in shape.parts) == [3, 3]


def _check_k222_set(g: Graph, vs) -> bool:
    if len(vs) != 6:
        return False
    sub, _ = induced_subgraph(g, vs)
    if sub.m != 12:
        return False
    shape = recognize_thick_multipartite(sub)
    return shape is not None and sorted(len(p) for p in shape.parts) == [2, 2, 2]
