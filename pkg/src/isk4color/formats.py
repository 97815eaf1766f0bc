"""Graph file formats (DIMACS .col, plain edge lists, graph6) and the
machine-readable report serialization.

All parsers normalize vertex ids to 0..n-1 and reject loops and duplicate
edges with a line number.  JSON output uses sorted keys and no volatile
fields, so identical inputs produce byte-identical reports.
"""

from __future__ import annotations

import json

from .graph import Graph

FORMATS = ("dimacs-col", "edge-list", "graph6")


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# graph6


def write_graph6_line(g: Graph) -> str:
    n = g.n
    if n > 258047:
        raise ValueError("graph too large for this graph6 writer")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    bits_out = []
    for j in range(1, n):
        for i in range(j):
            bits_out.append(1 if g.has_edge(i, j) else 0)
    while len(bits_out) % 6:
        bits_out.append(0)
    chars = []
    for k in range(0, len(bits_out), 6):
        val = 0
        for b in bits_out[k : k + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return head + "".join(chars)


def parse_graph6_line(line: str, lineno: int = 1) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphParseError("empty graph6 line", lineno)
    vals = []
    for ch in s:
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise GraphParseError(f"invalid graph6 character {ch!r}", lineno)
        vals.append(v)
    if vals[0] == 63:  # '~'
        if len(vals) < 4:
            raise GraphParseError("truncated graph6 size", lineno)
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    need = n * (n - 1) // 2
    if len(body) * 6 < need:
        raise GraphParseError("graph6 payload too short", lineno)
    stream = []
    for v in body:
        for s6 in (5, 4, 3, 2, 1, 0):
            stream.append(v >> s6 & 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# DIMACS and edge lists


def _parse_dimacs(text: str) -> Graph:
    n = m = None
    edges = []
    seen = set()
    count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError("malformed problem line (want 'p edge <n> <m>')", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("non-integer counts in problem line", lineno)
            if n < 0 or m < 0:
                raise GraphParseError("negative counts in problem line", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge before problem line", lineno)
            if len(parts) != 3:
                raise GraphParseError("malformed edge line (want 'e <u> <v>')", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError("non-integer vertex id", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise GraphParseError("self-loop", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(key)
            edges.append((u - 1, v - 1))
            count += 1
        else:
            raise GraphParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing problem line", 1)
    if m is not None and count != m:
        raise GraphParseError(f"header declares {m} edges, found {count}", 1)
    return Graph(n, edges)


def _parse_edge_list(text: str) -> Graph:
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError("expected two integers per line", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("non-integer token", lineno)
        if n is None:
            n, m = a, b
            if n < 0 or m < 0:
                raise GraphParseError("negative counts in header", lineno)
            continue
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphParseError("self-loop", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(key)
        edges.append((a, b))
    if n is None:
        raise GraphParseError("empty input", 1)
    if m is not None and len(edges) != m:
        raise GraphParseError(f"header declares {m} edges, found {len(edges)}", 1)
    return Graph(n, edges)


def _parse_graph6_text(text: str) -> Graph:
    lines = [(i, l) for i, l in enumerate(text.splitlines(), start=1) if l.strip()]
    if not lines:
        raise GraphParseError("empty input", 1)
    if len(lines) > 1:
        raise GraphParseError("multiple graph6 lines; this tool works on a single graph", lines[1][0])
    lineno, line = lines[0]
    return parse_graph6_line(line, lineno)


def detect_format(text: str, filename: str | None = None) -> str:
    if filename:
        low = filename.lower()
        if low.endswith(".col"):
            return "dimacs-col"
        if low.endswith(".g6"):
            return "graph6"
        if low.endswith((".el", ".edges", ".txt")):
            return "edge-list"
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line[0] in "cp" and (len(line) == 1 or line[1] in " \t"):
            return "dimacs-col"
        head = line.split()[0]
        if head.lstrip("-").isdigit():
            return "edge-list"
        return "graph6"
    raise GraphParseError("empty input", 1)


def parse_graph(text: str, fmt: str | None = None, filename: str | None = None) -> Graph:
    """Parse one graph; the format is detected from the filename/content when
    not given explicitly."""
    if fmt is None:
        fmt = detect_format(text, filename)
    if fmt == "dimacs-col":
        return _parse_dimacs(text)
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "graph6":
        return _parse_graph6_text(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_graph(g: Graph, fmt: str) -> str:
    if fmt == "dimacs-col":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "edge-list":
        lines = [f"{g.n} {g.m}"]
        lines += [f"{u} {v}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "graph6":
        return write_graph6_line(g) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


# ---------------------------------------------------------------------------
# reports


def serialize_coloring(result, as_json: bool = False, *, command=None, input_sha256=None, extra=None) -> str:
    """Render a ColoringResult as `v <vertex> <color>` lines plus a summary,
    or as a deterministic JSON report."""
    if as_json:
        body = result.to_dict() if result is not None else None
        trace = violations = None
        if body is not None:
            trace = body.pop("trace")
            violations = body.pop("violations")
            if extra:
                body.update(extra)
        return json_report(
            command=command, input_sha256=input_sha256, result=body,
            trace=trace, violations=violations,
        )
    if result is None:
        return "colors=0\n"
    lines = [f"v {v} {c}" for v, c in enumerate(result.coloring.assignment)]
    lines.append(f"colors={result.coloring.palette_size}")
    if result.violations:
        lines.append(f"violations={len(result.violations)}")
    return "\n".join(lines) + "\n"


def json_report(*, command=None, input_sha256=None, result=None, trace=None, violations=None) -> str:
    from . import __version__

    payload = {
        "command": list(command) if command else [],
        "input_sha256": input_sha256,
        "result": result,
        "trace": trace if trace is not None else [],
        "violations": violations if violations is not None else [],
        "version": __version__,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
