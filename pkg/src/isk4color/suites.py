"""Verification suites: stream exhaustively enumerated small graphs (plus
seeded random graphs where a claim calls for them) through per-claim checks,
and aggregate counts, violations, and extremal examples into a report.

Reports are deterministic given (suite, n range, seed): graphs are visited in
canonical enumeration order and worker pools preserve that order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .colorers import (
    ClassViolationError,
    color_general,
    color_girth5,
    color_triangle_free,
)
from .decompose import maximal_flat_paths, reduce_flat_path
from .families import random_connected_graph
from .formats import write_graph6_line
from .graph import Graph, bfs_layering, girth, is_proper_coloring
from .layering import ConfluenceSearchError, classify_confluence, find_confluence, upstairs_path
from .oracle import (
    chromatic_number_exact,
    classify_hole_attachment,
    contains_isk4,
    enumerate_graphs,
    verify_layer_forests,
)
from .patterns import (
    enumerate_holes,
    find_boat,
    find_k222,
    find_k33,
    find_prism,
    find_triangle,
    find_wheel,
)

EXHAUSTIVE_ATTACHER_CAP = 12
ATTACHMENT_SAMPLES = 200
EXTREMAL_KEEP = 10

FILTERS = {
    "triangle-free": lambda g: find_triangle(g) is None,
    "girth5": lambda g: girth(g) >= 5,
    "k33-free": lambda g: find_k33(g) is None,
    "k222-free": lambda g: find_k222(g) is None,
    "prism-free": lambda g: find_prism(g) is None,
    "boat-free": lambda g: find_boat(g) is None,
    "wheel-free": lambda g: find_wheel(g) is None,
    "isk4-free": lambda g: contains_isk4(g) is None,
}

# cheap filters run first
_FILTER_COST = {name: i for i, name in enumerate(FILTERS)}

# hereditary filters the enumerator can apply while generating
_GENERATION_FILTERS = {"triangle-free", "girth5"}


@dataclass
class SuiteReport:
    suite: str
    parameters: dict
    counts: dict
    max_observed: dict
    violations: list[dict]
    extremal: list[dict]
    wall_time_s: float = 0.0

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "parameters": self.parameters,
            "counts": self.counts,
            "max_observed": self.max_observed,
            "violations": self.violations,
            "extremal": self.extremal,
        }
        if include_timing:
            out["wall_time_s"] = round(self.wall_time_s, 3)
        return out

    def summary(self) -> str:
        total = self.counts.get("total", {})
        parts = [
            f"suite={self.suite}",
            f"graphs={total.get('passed_filters', 0)}/{total.get('enumerated', 0)}",
            f"checks={total.get('checks', 0)}",
            f"violations={len(self.violations)}",
        ]
        for k, v in sorted(self.max_observed.items()):
            parts.append(f"max_{k}={v}")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# per-graph checks (top level so worker processes can pickle them)


def _g6(g: Graph) -> str:
    return write_graph6_line(g)


def _check_flat_reduction(g: Graph, ctx: dict) -> dict:
    violations = []
    checks = 0
    for fp in maximal_flat_paths(g):
        reduced, _ = reduce_flat_path(g, fp)
        checks += 1
        w = contains_isk4(reduced)
        if w is not None:
            violations.append({
                "graph6": _g6(g),
                "n": g.n,
                "detail": f"reducing flat path {list(fp.vertices)} created an induced K4 subdivision",
            })
    return {"checks": checks, "violations": violations}


def _check_layer_forests(g: Graph, ctx: dict) -> dict:
    w = verify_layer_forests(g)
    if w is None:
        return {"checks": g.n, "violations": []}
    return {
        "checks": g.n,
        "violations": [{
            "graph6": _g6(g),
            "n": g.n,
            "detail": f"layer {w.layer} from root {w.root} contains the cycle {list(w.cycle)}",
        }],
    }


def _check_wheel_free_chi(g: Graph, ctx: dict) -> dict:
    chi = chromatic_number_exact(g)
    violations = []
    if chi > 3:
        violations.append({
            "graph6": _g6(g), "n": g.n,
            "detail": f"wheel-free graph with chromatic number {chi} > 3",
        })
    return {"checks": 1, "violations": violations, "chi": chi}


def _check_girth5_degree(g: Graph, ctx: dict) -> dict:
    violations = []
    min_deg = min((g.degree(v) for v in range(g.n)), default=0)
    if min_deg > 2:
        violations.append({
            "graph6": _g6(g), "n": g.n,
            "detail": f"girth >= 5 graph with minimum degree {min_deg} > 2",
        })
    try:
        coloring = color_girth5(g)
        if coloring.palette_size > 3 or not is_proper_coloring(g, coloring):
            violations.append({
                "graph6": _g6(g), "n": g.n,
                "detail": f"greedy 3-coloring failed (palette {coloring.palette_size})",
            })
    except ClassViolationError as exc:
        violations.append({
            "graph6": _g6(g), "n": g.n,
            "detail": f"degeneracy check failed: {exc.violation.message}",
        })
    return {"checks": 2, "violations": violations}


def _check_triangle_free_bound(g: Graph, ctx: dict) -> dict:
    return _check_colorer_bound(g, color_triangle_free, 4)


def _check_general_bound(g: Graph, ctx: dict) -> dict:
    return _check_colorer_bound(g, color_general, 24)


def _check_colorer_bound(g: Graph, colorer, bound: int) -> dict:
    violations = []
    palette = None
    try:
        res = colorer(g, "strict")
        palette = res.coloring.palette_size
        if not is_proper_coloring(g, res.coloring):
            violations.append({"graph6": _g6(g), "n": g.n, "detail": "coloring not proper"})
        if palette > bound:
            violations.append({
                "graph6": _g6(g), "n": g.n,
                "detail": f"palette {palette} exceeds the bound {bound}",
            })
        if res.violations:
            violations.append({
                "graph6": _g6(g), "n": g.n,
                "detail": f"unexpected class violations: {[v.kind for v in res.violations]}",
            })
    except ClassViolationError as exc:
        violations.append({
            "graph6": _g6(g), "n": g.n,
            "detail": f"strict colorer aborted: {exc.violation.kind}: {exc.violation.message}",
        })
    return {"checks": 1, "violations": violations, "palette": palette}


def _check_max_chi(g: Graph, ctx: dict) -> dict:
    return {"checks": 1, "violations": [], "chi": chromatic_number_exact(g)}


def _check_min_degree(g: Graph, ctx: dict) -> dict:
    bound = ctx["degree_bound"]
    min_deg = min((g.degree(v) for v in range(g.n)), default=0)
    record = {"checks": 1, "violations": [], "min_degree": min_deg}
    if min_deg > bound:
        record["counterexample"] = {
            "graph6": _g6(g), "n": g.n,
            "detail": f"minimum degree {min_deg} exceeds {bound}",
        }
    return record


def _check_hole_attachment(g: Graph, ctx: dict) -> dict:
    checks = 0
    violations = []
    for hole_idx, order in enumerate(enumerate_holes(g)):
        hole_set = set(order)
        attachers = [v for v in range(g.n)
                     if v not in hole_set and any(g.has_edge(v, c) for c in order)]
        hole_cover = {c: [v for v in attachers if g.has_edge(v, c)] for c in order}
        if any(not lst for lst in hole_cover.values()):
            continue  # no dominating attachment set exists at all
        if len(attachers) <= ctx.get("exhaustive_cap", EXHAUSTIVE_ATTACHER_CAP):
            subsets = _dominating_subsets(g, order, attachers)
        else:
            subsets = _sampled_dominating_subsets(
                g, order, attachers,
                random.Random(f"{ctx.get('seed', 0)}:{_g6(g)}:{hole_idx}"),
                ctx.get("samples", ATTACHMENT_SAMPLES),
            )
        for s in subsets:
            checks += 1
            if classify_hole_attachment(g, order, s) is None:
                violations.append({
                    "graph6": _g6(g), "n": g.n,
                    "detail": f"no attachment case matched hole {list(order)} with set {sorted(s)}",
                })
    return {"checks": checks, "violations": violations}


def _dominating_subsets(g: Graph, order, attachers):
    out = []
    for r in range(1, len(attachers) + 1):
        for combo in combinations(attachers, r):
            if _dominates(g, order, combo):
                out.append(combo)
    return out


def _dominates(g, order, subset) -> bool:
    return all(any(g.has_edge(v, c) for v in subset) for c in order)


def _sampled_dominating_subsets(g, order, attachers, rng, samples):
    out = []
    tries = 0
    while len(out) < samples and tries < samples * 20:
        tries += 1
        r = rng.randint(1, len(attachers))
        combo = tuple(sorted(rng.sample(attachers, r)))
        if _dominates(g, order, combo):
            out.append(combo)
    return out


def _validate_upstairs_path(g, layering, i, x, y, path) -> str | None:
    if not path or path[0] != x or path[-1] != y:
        return "wrong endpoints"
    if len(set(path)) != len(path):
        return "repeated vertex"
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            return "consecutive vertices not adjacent"
    for k in range(len(path)):
        for j in range(k + 2, len(path)):
            if g.has_edge(path[k], path[j]):
                return "path has a chord"
    lidx = layering.layer_index()
    per_layer: dict[int, int] = {}
    for v in path:
        lv = lidx[v]
        if lv > i:
            return "path leaves the allowed layers"
        per_layer[lv] = per_layer.get(lv, 0) + 1
    if any(c > 2 for lv, c in per_layer.items() if lv >= 1):
        return "more than two vertices in one layer"
    return None


def _check_upstairs(g: Graph, ctx: dict) -> dict:
    checks = 0
    violations = []
    pair_cap = ctx.get("pair_cap")
    for root in range(g.n):
        layering = bfs_layering(g, root)
        for i, layer in enumerate(layering.layers):
            if i == 0 or len(layer) < 2:
                continue
            verts = sorted(layer)
            pairs = list(combinations(verts, 2))
            triples = list(combinations(verts, 3))
            if pair_cap is not None:
                pairs = pairs[:pair_cap]
                triples = triples[:pair_cap]
            for x, y in pairs:
                checks += 1
                path = upstairs_path(g, layering, i, x, y)
                err = _validate_upstairs_path(g, layering, i, x, y, path)
                if err:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": f"upstairs path {path} for ({x},{y}) at layer {i} from {root}: {err}",
                    })
            for x, y, z in triples:
                checks += 1
                try:
                    conf = find_confluence(g, layering, i, x, y, z)
                except ConfluenceSearchError as exc:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": f"confluence search failed for ({x},{y},{z}) at layer {i} from {root}: {exc}",
                    })
                    continue
                if classify_confluence(g, conf.vertices, (x, y, z)) is None:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": f"confluence for ({x},{y},{z}) at layer {i} from {root} failed verification",
                    })
                elif find_triangle(g) is None and conf.kind != 1:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": "triangle-free graph produced a triangle-centered confluence",
                    })
    return {"checks": checks, "violations": violations}


@dataclass
class SuiteSpec:
    name: str
    alias: str
    description: str
    filters: tuple[str, ...]
    check: object
    context: dict = field(default_factory=dict)
    expected_max_chi: int | None = None
    randomized: bool = False


SUITES: dict[str, SuiteSpec] = {
    s.name: s
    for s in [
        SuiteSpec(
            "flat-reduction", "lemma3",
            "reducing any maximal flat path of length >= 2 preserves freedom "
            "from induced K4 subdivisions",
            ("isk4-free",), _check_flat_reduction,
        ),
        SuiteSpec(
            "upstairs", "lemma45",
            "upstairs paths are induced, stay in layers 0..i with at most two "
            "vertices per layer, and confluences verify structurally",
            (), _check_upstairs, randomized=True,
        ),
        SuiteSpec(
            "hole-attachment", "lemma7",
            "every dominating attachment set of every hole matches one of the "
            "three attachment cases",
            ("triangle-free", "k33-free", "isk4-free"), _check_hole_attachment,
        ),
        SuiteSpec(
            "layer-forests", "lemma8",
            "every BFS layer from every root induces a forest",
            ("triangle-free", "k33-free", "isk4-free"), _check_layer_forests,
        ),
        SuiteSpec(
            "wheel-free-chi", "theorem1",
            "wheel-free graphs in the class have chromatic number at most 3 "
            "(statement check by exact oracle)",
            ("isk4-free", "wheel-free"), _check_wheel_free_chi,
        ),
        SuiteSpec(
            "girth5-degree", "theorem2",
            "girth >= 5 graphs in the class have a vertex of degree <= 2 and "
            "3-color greedily",
            ("girth5", "isk4-free"), _check_girth5_degree,
        ),
        SuiteSpec(
            "triangle-free-bound", "theorem5",
            "the triangle-free colorer is proper with at most 4 colors and no "
            "class violations",
            ("triangle-free", "isk4-free"), _check_triangle_free_bound,
        ),
        SuiteSpec(
            "general-bound", "theorem6",
            "the general colorer is proper with at most 24 colors and no "
            "class violations",
            ("isk4-free",), _check_general_bound,
        ),
        SuiteSpec(
            "max-chi-general", "conjecture1",
            "search for the maximum chromatic number over the class "
            "(expected <= 4)",
            ("isk4-free",), _check_max_chi, expected_max_chi=4,
        ),
        SuiteSpec(
            "max-chi-triangle-free", "conjecture2",
            "search for the maximum chromatic number over the triangle-free "
            "subclass (expected <= 3)",
            ("triangle-free", "isk4-free"), _check_max_chi, expected_max_chi=3,
        ),
        SuiteSpec(
            "min-degree-c3", "conjecture3",
            "search for a graph of minimum degree > 3 in the prism/K222/K33-"
            "free subclass (none expected)",
            ("k33-free", "k222-free", "prism-free", "isk4-free"), _check_min_degree,
            context={"degree_bound": 3},
        ),
        SuiteSpec(
            "min-degree-triangle-free", "conjecture4",
            "search for a graph of minimum degree > 2 in the triangle/K33-free "
            "subclass (none expected)",
            ("triangle-free", "k33-free", "isk4-free"), _check_min_degree,
            context={"degree_bound": 2},
        ),
    ]
}

SUITE_ALIASES = {s.alias: s.name for s in SUITES.values()}


def resolve_suite(name: str) -> SuiteSpec:
    key = SUITE_ALIASES.get(name, name)
    if key not in SUITES:
        known = sorted(SUITES) + sorted(SUITE_ALIASES)
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(known)}")
    return SUITES[key]


# ---------------------------------------------------------------------------
# the driver


def _worker(args):
    masks, suite_name, ctx = args
    g = Graph.from_masks(masks)
    spec = SUITES[suite_name]
    return spec.check(g, ctx)


def run_suite(
    suite: str,
    n_max: int,
    *,
    connected: bool = True,
    extra_filters: tuple[str, ...] = (),
    jobs: int = 1,
    seed: int = 0,
    corpus: dict[int, list[Graph]] | None = None,
    random_graphs: int = 1000,
    random_n_max: int = 30,
    pair_cap_random: int = 3,
) -> SuiteReport:
    """Run one verification suite over all graphs with 1..n_max vertices.

    ``corpus`` optionally injects pre-enumerated connected graphs per order
    (used by the test suite to share one enumeration across many suites).
    ``seed`` fixes every randomized sample.  Workers only parallelize the
    per-graph checks; aggregation order is the enumeration order.
    """
    spec = resolve_suite(suite)
    t0 = time.monotonic()
    filters = list(dict.fromkeys(list(spec.filters) + list(extra_filters)))
    for f in filters:
        if f not in FILTERS:
            raise ValueError(f"unknown filter {f!r}; known: {', '.join(FILTERS)}")
    ctx = dict(spec.context)
    ctx["seed"] = seed

    by_n: dict[str, dict] = {}
    violations: list[dict] = []
    max_chi = None
    max_palette = None
    chi_examples: list[dict] = []
    exceed_examples: list[dict] = []
    counter_examples: list[dict] = []

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        runtime = _runtime_filters(filters)
        for n in range(1, n_max + 1):
            enumerated = 0
            graphs = []
            for g in _graph_source(n, connected, filters, corpus):
                enumerated += 1
                if all(FILTERS[f](g) for f in runtime):
                    graphs.append(g)
            records = _map_checks(pool, spec, graphs, ctx)
            checks = 0
            for g, rec in zip(graphs, records):
                checks += rec["checks"]
                violations.extend(rec["violations"])
                chi = rec.get("chi")
                if chi is not None:
                    if max_chi is None or chi > max_chi:
                        max_chi = chi
                        chi_examples = []
                    if chi == max_chi and len(chi_examples) < EXTREMAL_KEEP:
                        chi_examples.append({"graph6": _g6(g), "n": g.n, "chi": chi})
                    if spec.expected_max_chi is not None and chi > spec.expected_max_chi:
                        exceed_examples.append({
                            "graph6": _g6(g), "n": g.n, "chi": chi,
                            "exceeds_expected": True,
                        })
                if rec.get("palette") is not None:
                    max_palette = max(max_palette or 0, rec["palette"])
                if rec.get("counterexample"):
                    counter_examples.append(rec["counterexample"])
            by_n[str(n)] = {
                "enumerated": enumerated,
                "passed_filters": len(graphs),
                "checks": checks,
            }
        random_bucket = None
        if spec.randomized and random_graphs > 0:
            random_bucket = _run_random_upstairs(
                seed, random_graphs, random_n_max, pair_cap_random, violations
            )
    finally:
        if pool is not None:
            pool.shutdown()

    total = {
        key: sum(b[key] for b in by_n.values())
        for key in ("enumerated", "passed_filters", "checks")
    }
    counts = {"by_n": by_n, "total": total}
    if random_bucket is not None:
        counts["random"] = random_bucket
    max_observed = {}
    if max_chi is not None:
        max_observed["chi"] = max_chi
    if max_palette is not None:
        max_observed["palette"] = max_palette
    extremal = exceed_examples + counter_examples
    if spec.expected_max_chi is not None:
        extremal = extremal + chi_examples
    # jobs and wall time are execution details, not part of the report
    parameters = {
        "suite": spec.name,
        "alias": spec.alias,
        "n_max": n_max,
        "connected": connected,
        "filters": filters,
        "seed": seed,
    }
    if spec.randomized:
        parameters["random_graphs"] = random_graphs
        parameters["random_n_max"] = random_n_max
    if spec.expected_max_chi is not None:
        parameters["expected_max_chi"] = spec.expected_max_chi
    return SuiteReport(
        suite=spec.name,
        parameters=parameters,
        counts=counts,
        max_observed=max_observed,
        violations=violations,
        extremal=extremal,
        wall_time_s=time.monotonic() - t0,
    )


def _graph_source(n, connected, filters, corpus):
    """Stream of graphs already satisfying the hereditary generation filters,
    so counts agree between direct enumeration and an injected corpus."""
    gen = [f for f in filters if f in _GENERATION_FILTERS]
    if corpus is not None and n in corpus:
        graphs = corpus[n]
        for f in gen:
            graphs = [g for g in graphs if FILTERS[f](g)]
        return graphs
    if "girth5" in gen:
        return enumerate_graphs(n, connected=connected, _hereditary="girth5")
    if "triangle-free" in gen:
        return enumerate_graphs(n, connected=connected, triangle_free=True)
    return enumerate_graphs(n, connected=connected)


def _runtime_filters(filters):
    out = [f for f in filters if f not in _GENERATION_FILTERS]
    return sorted(out, key=_FILTER_COST.get)


def _map_checks(pool, spec, graphs, ctx):
    if pool is None or len(graphs) < 4:
        return [spec.check(g, ctx) for g in graphs]
    payload = [(g._adj, spec.name, ctx) for g in graphs]
    return list(pool.map(_worker, payload, chunksize=max(1, len(payload) // 64)))


def _run_random_upstairs(seed, count, n_max, pair_cap, violations):
    checks = 0
    graphs = 0
    ctx = {"pair_cap": pair_cap}
    for idx in range(count):
        rng = random.Random(f"{seed}:upstairs-random:{idx}")
        n = rng.randint(4, n_max)
        p = rng.uniform(0.05, 0.45)
        g = random_connected_graph(rng, n, p)
        graphs += 1
        rec = _check_upstairs_sampled(g, rng, pair_cap)
        checks += rec["checks"]
        violations.extend(rec["violations"])
    return {"graphs": graphs, "checks": checks}


def _check_upstairs_sampled(g: Graph, rng: random.Random, cap: int) -> dict:
    checks = 0
    violations = []
    root = rng.randrange(g.n)
    layering = bfs_layering(g, root)
    for i, layer in enumerate(layering.layers):
        if i == 0 or len(layer) < 2:
            continue
        verts = sorted(layer)
        pairs = list(combinations(verts, 2))
        rng.shuffle(pairs)
        for x, y in pairs[:cap]:
            checks += 1
            path = upstairs_path(g, layering, i, x, y)
            err = _validate_upstairs_path(g, layering, i, x, y, path)
            if err:
                violations.append({
                    "graph6": _g6(g), "n": g.n,
                    "detail": f"upstairs path {path} for ({x},{y}) layer {i} root {root}: {err}",
                })
        if len(verts) >= 3:
            triples = list(combinations(verts, 3))
            rng.shuffle(triples)
            for x, y, z in triples[: max(1, cap // 2)]:
                checks += 1
                try:
                    conf = find_confluence(g, layering, i, x, y, z)
                except ConfluenceSearchError as exc:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": f"confluence search failed ({x},{y},{z}) layer {i} root {root}: {exc}",
                    })
                    continue
                if classify_confluence(g, conf.vertices, (x, y, z)) is None:
                    violations.append({
                        "graph6": _g6(g), "n": g.n,
                        "detail": f"confluence verification failed ({x},{y},{z}) layer {i} root {root}",
                    })
    return {"checks": checks, "violations": violations}
