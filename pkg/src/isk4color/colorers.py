"""Constructive bounded colorers.

``color_triangle_free`` colors {K4-subdivision, triangle}-free graphs with at
most 4 colors; ``color_general`` colors K4-subdivision-free graphs with at
most 24.  Both recurse on clique cutsets and proper 2-cutsets, dispatch the
structured leaf cases (thick complete multipartite, line graph of a subcubic
root, rich square), and otherwise color by nested BFS layerings whose layers
are progressively simpler (4-wheel-free, then boat-free, then girth >= 5).

Class assumptions are checked operationally along the way.  In strict mode
the first failure raises ``ClassViolationError`` with a witness; in tolerant
mode the offending piece falls back to a greedy coloring and the failure is
recorded.  Output colorings are proper in every mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Graph,
    Coloring,
    bfs_layering,
    connected_components,
    degeneracy_order,
    find_cycle,
    greedy_coloring,
    induced_subgraph,
    is_proper_coloring,
    shortest_cycle,
)
from .decompose import (
    DecompositionError,
    build_2cutset_blocks,
    find_clique_cutset,
    find_proper_2cutset,
    merge_colorings,
)
from .layering import combine_layer_colorings
from .patterns import (
    KrauszPartition,
    MultipartiteShape,
    PatternWitness,
    check_rich_square,
    find_k4,
    find_k222,
    find_k33,
    find_prism,
    find_rich_square,
    find_triangle,
    recognize_line_graph_subcubic,
    recognize_thick_multipartite,
)

BOUND_TRIANGLE_FREE = 4
BOUND_GENERAL = 24
BOUND_C1 = 6
BOUND_C2 = 12
BOUND_C3 = 24


@dataclass
class Violation:
    kind: str
    message: str
    vertices: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "vertices": list(self.vertices)}


class ClassViolationError(Exception):
    """Strict-mode abort carrying the first class-assumption failure."""

    def __init__(self, violation: Violation):
        super().__init__(f"{violation.kind}: {violation.message}")
        self.violation = violation


class NotAForestError(ValueError):
    def __init__(self, cycle):
        super().__init__(f"input contains the cycle {tuple(cycle)}")
        self.cycle = tuple(cycle)


@dataclass
class ColoringResult:
    coloring: Coloring
    bound_claimed: int
    trace: list[dict] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "palette_size": self.coloring.palette_size,
            "assignment": list(self.coloring.assignment),
            "bound_claimed": self.bound_claimed,
            "trace": self.trace,
            "violations": [v.to_dict() for v in self.violations],
        }


class _Run:
    """Mutable per-call context: mode, trace log, and violation collection."""

    def __init__(self, mode: str, depth_limit: int = 0):
        if mode not in ("strict", "tolerant"):
            raise ValueError(f"mode must be 'strict' or 'tolerant', got {mode!r}")
        self.mode = mode
        self.depth_limit = depth_limit
        self.trace: list[dict] = []
        self.violations: list[Violation] = []

    def note(self, rule: str, ids, **detail):
        entry = {"rule": rule}
        entry.update(detail)
        entry["scope"] = [ids[v] for v in range(len(ids))] if ids else []
        self.trace.append(entry)

    def violate(self, kind: str, message: str, vertices=()) -> None:
        violation = Violation(kind, message, tuple(sorted(vertices)))
        if self.mode == "strict":
            raise ClassViolationError(violation)
        self.violations.append(violation)


def _ids_for(g: Graph) -> tuple[int, ...]:
    return tuple(range(g.n))


def _map_ids(ids, sub_ids) -> tuple[int, ...]:
    return tuple(ids[v] for v in sub_ids)


# ---------------------------------------------------------------------------
# leaf colorers


def color_forest(g: Graph) -> Coloring:
    """Proper 2-coloring of a forest (1 color if edgeless, 0 if empty)."""
    cyc = find_cycle(g)
    if cyc is not None:
        raise NotAForestError(cyc)
    if g.n == 0:
        return Coloring((), 0)
    if g.m == 0:
        return Coloring((0,) * g.n, 1)
    assign = [-1] * g.n
    for comp in connected_components(g):
        root = min(comp)
        layering = bfs_layering(g, root)
        for i, layer in enumerate(layering.layers):
            for v in layer:
                assign[v] = i % 2
    return Coloring(tuple(assign), 2)


def color_girth5(g: Graph) -> Coloring:
    """Greedy 3-coloring along reverse degeneracy order; sound for graphs of
    degeneracy <= 2, which covers K4-subdivision-free graphs of girth >= 5."""
    order, degeneracy = degeneracy_order(g)
    if degeneracy > 2:
        core = _dense_core(g)
        raise ClassViolationError(
            Violation("degeneracy", f"degeneracy {degeneracy} exceeds 2", core)
        )
    return greedy_coloring(g, reversed(order))


def _dense_core(g: Graph) -> tuple[int, ...]:
    """Vertices remaining when minimum-degree-<=2 removal stalls."""
    alive = set(range(g.n))
    changed = True
    while changed and alive:
        changed = False
        for v in sorted(alive):
            if sum(1 for w in g.neighbors(v) if w in alive) <= 2:
                alive.remove(v)
                changed = True
    return tuple(sorted(alive))


def color_thick_multipartite(shape: MultipartiteShape) -> Coloring:
    """One color per part."""
    n = sum(len(p) for p in shape.parts)
    seen = sorted(v for p in shape.parts for v in p)
    if seen != list(range(n)):
        raise ValueError("parts must partition 0..n-1")
    assign = [0] * n
    for c, part in enumerate(shape.parts):
        for v in part:
            assign[v] = c
    return Coloring(tuple(assign), len(shape.parts))


@dataclass
class EdgeColoring:
    assignment: dict[tuple[int, int], int]
    palette_size: int
    max_degree: int
    out_of_contract: bool  # set when the input exceeded max degree 3


def edge_color_subcubic(h: Graph) -> EdgeColoring:
    """Proper edge coloring with at most max_degree + 1 colors via the
    fan-rotation and alternating-path method.

    Intended for max degree <= 3 (then at most 4 colors); larger inputs are
    still colored with max_degree + 1 colors but flagged out of contract.
    When the fan pass spends the extra color on a small graph, a bounded
    exact search tries to bring the palette down to max_degree, so desk-scale
    outputs match the optimum.
    """
    delta = max((h.degree(v) for v in range(h.n)), default=0)
    k = delta + 1 if delta else 0
    color: dict[tuple[int, int], int] = {}
    used: list[set[int]] = [set() for _ in range(h.n)]

    def free_colors(v):
        return [c for c in range(k) if c not in used[v]]

    def set_color(e, c):
        old = color.get(e)
        if old is not None:
            used[e[0]].discard(old)
            used[e[1]].discard(old)
        color[e] = c
        used[e[0]].add(c)
        used[e[1]].add(c)

    def edge_at(v, c):
        for w in h.neighbors(v):
            e = (min(v, w), max(v, w))
            if color.get(e) == c:
                return w, e
        return None

    def invert_path(start, c, d):
        # flip colors along the maximal path from ``start`` alternating d, c
        chain = []
        cur = start
        want = d
        prev = -1
        while True:
            hit = edge_at(cur, want)
            if hit is None:
                break
            w, e = hit
            if w == prev:
                break
            chain.append(e)
            prev, cur = cur, w
            want = c if want == d else d
        for e in chain:
            color[e] = c if color[e] == d else d
        for v in set(x for e in chain for x in e):
            used[v] = {color[(min(v, w), max(v, w))] for w in h.neighbors(v)
                       if (min(v, w), max(v, w)) in color}

    for u, v in sorted(h.edges()):
        e = (u, v)
        both = sorted(set(free_colors(u)) & set(free_colors(v)))
        if both:
            set_color(e, both[0])
            continue
        # build a maximal fan at u starting from v
        fan = [v]
        fan_edges = {v: e}
        while True:
            last = fan[-1]
            ext = None
            for w in h.neighbors(u):
                if w in fan:
                    continue
                ew = (min(u, w), max(u, w))
                if ew in color and color[ew] not in used[last]:
                    ext = (w, ew)
                    break
            if ext is None:
                break
            fan.append(ext[0])
            fan_edges[ext[0]] = ext[1]
        c = free_colors(u)[0]
        d = free_colors(fan[-1])[0]
        invert_path(u, c, d)
        # after inversion find the first fan prefix endpoint where d is free
        w_idx = None
        for idx, w in enumerate(fan):
            if idx > 0 and color[fan_edges[w]] in used[fan[idx - 1]]:
                break  # fan property broken past here by the inversion
            if d not in used[w]:
                w_idx = idx
                break
        assert w_idx is not None, "alternating path inversion failed to free a color"
        # rotate the fan prefix toward the uncolored edge, then finish with d;
        # apply in one batch (used-sets cannot track the transient duplicates)
        new_colors = {fan_edges[fan[idx]]: color[fan_edges[fan[idx + 1]]] for idx in range(w_idx)}
        new_colors[fan_edges[fan[w_idx]]] = d
        for e2, c2 in new_colors.items():
            color[e2] = c2
        for x in {u, *fan[: w_idx + 1]}:
            used[x] = {
                color[(min(x, y), max(x, y))]
                for y in h.neighbors(x)
                if (min(x, y), max(x, y)) in color
            }

    palette = max(color.values(), default=-1) + 1
    if palette == delta + 1 and h.m <= _EXACT_EDGE_SEARCH_EDGE_CAP:
        tight = _exact_edge_coloring(h, delta)
        if tight is not None:
            color = tight
            palette = delta
    _assert_proper_edge_coloring(h, color)
    return EdgeColoring(color, palette, delta, delta > 3)


_EXACT_EDGE_SEARCH_EDGE_CAP = 60


def _exact_edge_coloring(h: Graph, k: int) -> dict | None:
    """Backtracking k-edge-coloring; edges ordered to keep assignments forced."""
    edges = sorted(h.edges())
    order: list[tuple[int, int]] = []
    seen = set()
    frontier = list(edges[:1])
    while frontier:
        e = frontier.pop()
        if e in seen:
            continue
        seen.add(e)
        order.append(e)
        for f in edges:
            if f not in seen and set(e) & set(f):
                frontier.append(f)
    order += [e for e in edges if e not in seen]
    used: list[set[int]] = [set() for _ in range(h.n)]
    assign: dict[tuple[int, int], int] = {}

    def rec(i):
        if i == len(order):
            return True
        u, v = order[i]
        for c in range(k):
            if c in used[u] or c in used[v]:
                continue
            used[u].add(c)
            used[v].add(c)
            assign[(u, v)] = c
            if rec(i + 1):
                return True
            used[u].discard(c)
            used[v].discard(c)
            del assign[(u, v)]
        return False

    return dict(assign) if rec(0) else None


def _assert_proper_edge_coloring(h: Graph, color) -> None:
    for u, v in h.edges():
        assert (u, v) in color, f"edge ({u},{v}) left uncolored"
    for v in range(h.n):
        cs = [color[(min(v, w), max(v, w))] for w in h.neighbors(v)]
        assert len(cs) == len(set(cs)), f"color clash at vertex {v}"


def color_line_graph(g: Graph, kp: KrauszPartition) -> Coloring:
    """Pull an edge coloring of the subcubic root back through the
    vertex-of-g <-> edge-of-root bijection."""
    rebuilt_edges = sorted(tuple(sorted(kp.root_edge_of[v])) for v in range(g.n))
    if rebuilt_edges != sorted(kp.root.edges()) or len(rebuilt_edges) != g.n:
        raise ValueError("partition does not match the graph")
    ec = edge_color_subcubic(kp.root)
    assign = []
    for v in range(g.n):
        a, b = kp.root_edge_of[v]
        assign.append(ec.assignment[(min(a, b), max(a, b))])
    palette = max(assign, default=-1) + 1
    coloring = Coloring(tuple(assign), max(palette, 1) if g.n else 0)
    if not is_proper_coloring(g, coloring):
        raise ValueError("invalid partition: pulled-back coloring is not proper")
    return coloring


def color_rich_square(g: Graph, witness: PatternWitness) -> Coloring:
    """The fixed scheme for a rich square: opposite square corners share a
    color, one-vertex attachments take a third color, two-ended attachment
    paths take the third and fourth colors at their ends and alternate the
    square colors inside."""
    if witness.kind != "rich_square":
        raise ValueError("witness must be a rich_square")
    square = tuple(witness.extra["square"])
    links = check_rich_square(g, square)
    if links is None or set(witness.vertices) != set(range(g.n)):
        raise ValueError("invalid rich square witness")
    u1, u2, u3, u4 = square
    assign = [-1] * g.n
    assign[u1] = assign[u3] = 0
    assign[u2] = assign[u4] = 1
    for link in links:
        if len(link) == 1:
            assign[link[0]] = 2
        else:
            assign[link[0]] = 2
            assign[link[-1]] = 3
            for k, v in enumerate(link[1:-1]):
                assign[v] = k % 2
    coloring = Coloring(tuple(assign), max(assign) + 1)
    assert is_proper_coloring(g, coloring)
    return coloring


def greedy_fallback(g: Graph) -> Coloring:
    """Reverse-degeneracy greedy; proper with at most degeneracy+1 colors."""
    return greedy_coloring(g)


# ---------------------------------------------------------------------------
# nested layering chain (boat-free, 4-wheel-free, K222-free classes)


def _per_component(g: Graph, ids, run: _Run, fn) -> Coloring:
    comps = connected_components(g)
    if len(comps) == 1:
        return fn(g, ids, run)
    if g.n == 0:
        return Coloring((), 0)
    assign = [-1] * g.n
    palette = 0
    for comp in comps:
        sub, sub_ids = induced_subgraph(g, comp)
        c = fn(sub, _map_ids(ids, sub_ids), run)
        for k, v in enumerate(sub_ids):
            assign[v] = c.assignment[k]
        palette = max(palette, c.palette_size)
    return Coloring(tuple(assign), max(palette, 1))


def _layered(g: Graph, ids, run: _Run, layer_fn, rule: str) -> Coloring:
    """Layer a connected graph from its lowest vertex and color each layer
    with ``layer_fn``, combining odd and even palettes."""
    layering = bfs_layering(g, 0)
    per_layer = []
    layer_palettes = []
    for layer in layering.layers:
        sub, sub_ids = induced_subgraph(g, layer)
        per_layer.append(layer_fn(sub, _map_ids(ids, sub_ids), run))
        layer_palettes.append(per_layer[-1].palette_size)
    combined = combine_layer_colorings(g, layering, per_layer)
    run.note(
        rule,
        ids,
        root=ids[0],
        layer_sizes=[len(l) for l in layering.layers],
        layer_palettes=layer_palettes,
        palette=combined.palette_size,
    )
    return combined


def _c1_layer(g: Graph, ids, run: _Run) -> Coloring:
    """Color one innermost layer, which is girth >= 5 for inputs in class C1."""
    cyc = shortest_cycle(g)
    if cyc is not None and len(cyc) < 5:
        run.violate(
            "short_cycle_in_layer",
            f"layer contains a cycle of length {len(cyc)} (girth must be >= 5)",
            _map_ids(ids, cyc),
        )
        return greedy_fallback(g)
    try:
        return color_girth5(g)
    except ClassViolationError as exc:
        run.violate(
            "layer_degeneracy",
            "layer is not 2-degenerate",
            _map_ids(ids, exc.violation.vertices),
        )
        return greedy_fallback(g)


def _c1_connected(g: Graph, ids, run: _Run) -> Coloring:
    return _layered(g, ids, run, _c1_layer, "layering_girth5")


def _c2_connected(g: Graph, ids, run: _Run) -> Coloring:
    return _layered(g, ids, run, lambda s, si, r: _per_component(s, si, r, _c1_connected), "layering_boat_free")


def _c3_connected(g: Graph, ids, run: _Run) -> Coloring:
    return _layered(g, ids, run, lambda s, si, r: _per_component(s, si, r, _c2_connected), "layering_4wheel_free")


def _wrap(g: Graph, run: _Run, coloring: Coloring, bound: int) -> ColoringResult:
    assert is_proper_coloring(g, coloring), "internal error: produced an improper coloring"
    result = ColoringResult(coloring, bound, run.trace, run.violations)
    if not result.violations:
        assert coloring.palette_size <= bound, (
            f"internal error: palette {coloring.palette_size} exceeds bound {bound} without violations"
        )
    return result


def color_c1(g: Graph, mode: str = "strict") -> ColoringResult:
    """Layered coloring for {K4-subdivision, K33, prism, boat}-free graphs:
    every layer has girth >= 5, so 3 colors per parity class suffice (<= 6)."""
    run = _Run(mode)
    coloring = _per_component(g, _ids_for(g), run, _c1_connected)
    return _wrap(g, run, coloring, BOUND_C1)


def color_c2(g: Graph, mode: str = "strict") -> ColoringResult:
    """{K4-subdivision, K33, prism, 4-wheel}-free graphs: layers are boat-free,
    so each colors with 6 and the whole graph with <= 12."""
    run = _Run(mode)
    coloring = _per_component(g, _ids_for(g), run, _c2_connected)
    return _wrap(g, run, coloring, BOUND_C2)


def color_c3(g: Graph, mode: str = "strict") -> ColoringResult:
    """{K4-subdivision, K33, prism, K222}-free graphs: layers are 4-wheel-free,
    so each colors with 12 and the whole graph with <= 24."""
    run = _Run(mode)
    coloring = _per_component(g, _ids_for(g), run, _c3_connected)
    return _wrap(g, run, coloring, BOUND_C3)


# ---------------------------------------------------------------------------
# the two main colorers


def _recursion_guard(depth: int, run: _Run) -> None:
    # blocks shrink by at least one vertex per level, so depth beyond the
    # original vertex count signals a non-terminating decomposition
    if depth > run.depth_limit:
        raise DecompositionError(
            f"decomposition depth {depth} exceeds the input vertex count; "
            "the cutset recursion failed to shrink"
        )


def _tf_connected(g: Graph, ids, run: _Run, depth: int) -> Coloring:
    _recursion_guard(depth, run)
    cut = find_clique_cutset(g)
    if cut is not None:
        return _recurse_clique_cutset(g, ids, run, depth, cut, _tf_connected)
    k33 = find_k33(g)
    if k33 is not None:
        shape = recognize_thick_multipartite(g)
        if shape is not None and len(shape.parts) == 2 and shape.thick:
            run.note("thick_bipartite", ids, parts=[len(p) for p in shape.parts])
            return color_thick_multipartite(shape)
        run.violate(
            "k33_not_bipartite",
            "graph contains K33 but is not a thick complete bipartite graph "
            "and has no clique cutset",
            _map_ids(ids, sorted(k33.vertices)),
        )
        run.note("greedy_fallback", ids)
        return greedy_fallback(g)
    return _layered(g, ids, run, _tf_layer, "layering_forest")


def _tf_layer(g: Graph, ids, run: _Run) -> Coloring:
    try:
        return color_forest(g)
    except NotAForestError as exc:
        run.violate(
            "cycle_in_layer",
            "a layer induces a cycle; the input is outside the triangle-free class",
            _map_ids(ids, exc.cycle),
        )
        return greedy_fallback(g)


def _recurse_clique_cutset(g, ids, run, depth, cut, rec) -> Coloring:
    run.note("clique_cutset", ids, clique=[ids[v] for v in cut.clique],
             sides=[len(cut.side_x), len(cut.side_y)])
    bx, ids_x = induced_subgraph(g, cut.side_x | set(cut.clique))
    by, ids_y = induced_subgraph(g, cut.side_y | set(cut.clique))
    cx = rec(bx, _map_ids(ids, ids_x), run, depth + 1)
    cy = rec(by, _map_ids(ids, ids_y), run, depth + 1)
    return merge_colorings(g, cx, ids_x, cy, ids_y, cut.clique)


def _general_connected(g: Graph, ids, run: _Run, depth: int) -> Coloring:
    _recursion_guard(depth, run)
    k4 = find_k4(g)
    if k4 is not None:
        run.violate("k4", "graph contains K4, so it is not K4-subdivision-free",
                    _map_ids(ids, k4))
        run.note("greedy_fallback", ids)
        return greedy_fallback(g)
    cut = find_clique_cutset(g)
    if cut is not None:
        return _recurse_clique_cutset(g, ids, run, depth, cut, _general_connected)
    k33 = find_k33(g)
    if k33 is not None:
        shape = recognize_thick_multipartite(g)
        if shape is not None and shape.thick:
            run.note("thick_multipartite", ids, parts=[len(p) for p in shape.parts])
            return color_thick_multipartite(shape)
        run.violate(
            "k33_not_multipartite",
            "graph contains K33 but is neither thick complete multipartite "
            "nor clique-cutset decomposable",
            _map_ids(ids, sorted(k33.vertices)),
        )
        run.note("greedy_fallback", ids)
        return greedy_fallback(g)
    cut2 = find_proper_2cutset(g)
    if cut2 is not None:
        run.note("proper_2cutset", ids, cut=[ids[cut2.a], ids[cut2.b]],
                 sides=[len(cut2.side_x), len(cut2.side_y)])
        bx, ids_x, by, ids_y = build_2cutset_blocks(g, cut2)
        cx = _general_connected(bx, _map_ids(ids, ids_x), run, depth + 1)
        cy = _general_connected(by, _map_ids(ids, ids_y), run, depth + 1)
        return merge_colorings(g, cx, ids_x, cy, ids_y, (cut2.a, cut2.b))
    trigger = find_k222(g) or find_prism(g)
    if trigger is not None:
        kp = recognize_line_graph_subcubic(g)
        if kp is not None:
            run.note("line_graph_subcubic", ids, root_n=kp.root.n,
                     cliques=len(kp.cliques))
            return color_line_graph(g, kp)
        rs = find_rich_square(g)
        if rs is not None:
            run.note("rich_square", ids, square=[ids[v] for v in rs.extra["square"]],
                     links=len(rs.extra["links"]))
            return color_rich_square(g, rs)
        run.violate(
            f"{trigger.kind}_not_decomposable",
            f"graph contains a {trigger.kind} but is neither a subcubic line "
            "graph nor a rich square, and has no cutset",
            _map_ids(ids, sorted(trigger.vertices)),
        )
        run.note("greedy_fallback", ids)
        return greedy_fallback(g)
    return _c3_connected(g, ids, run)


def color_triangle_free(g: Graph, mode: str = "strict") -> ColoringResult:
    """Proper coloring of a {K4-subdivision, triangle}-free graph with at most
    4 colors.  A triangle in the input is rejected in both modes; other class
    failures follow the strict/tolerant contract."""
    tri = find_triangle(g)
    if tri is not None:
        raise ClassViolationError(
            Violation("triangle", "input contains a triangle", tuple(sorted(tri.vertices)))
        )
    run = _Run(mode, depth_limit=g.n + 1)
    coloring = _per_component(g, _ids_for(g), run, lambda s, si, r: _tf_connected(s, si, r, 0))
    return _wrap(g, run, coloring, BOUND_TRIANGLE_FREE)


def color_general(g: Graph, mode: str = "strict") -> ColoringResult:
    """Proper coloring of a K4-subdivision-free graph with at most 24 colors."""
    run = _Run(mode, depth_limit=g.n + 1)
    coloring = _per_component(g, _ids_for(g), run, lambda s, si, r: _general_connected(s, si, r, 0))
    return _wrap(g, run, coloring, BOUND_GENERAL)


def color_auto(g: Graph, mode: str = "strict") -> tuple[str, ColoringResult]:
    """triangle-free algorithm when no triangle exists, else the general one."""
    if find_triangle(g) is None:
        return "triangle-free", color_triangle_free(g, mode)
    return "general", color_general(g, mode)
