"""Graph and label file formats.

``ghct`` graphs::

    c optional comment
    p ghct <n> <m>
    e <u> <v> <weight>        # 1-based vertex ids, m lines

DIMACS max-flow files (``p max``) are read-only; arcs are taken as
undirected edges and all arcs between the same vertex pair are merged into
one edge whose weight is their sum.  Labels files hold ``k <edge> <value>``
lines with 1-based edge indices.
"""

from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path

from .errors import ParseError
from .graph import Graph


def format_weight(w: float) -> str:
    if float(w).is_integer() and abs(w) < 2**53:
        return str(int(w))
    return repr(float(w))


def _number(tok: str, lineno: int, what: str) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not a number", lineno) from None
    if not math.isfinite(x):
        raise ParseError(f"{what} {tok!r} is not finite", lineno)
    return x


def _vertex(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"vertex id {tok!r} is not an integer", lineno) from None
    if not 1 <= v <= n:
        raise ParseError(f"vertex id {v} outside 1..{n}", lineno)
    return v - 1


def parse_ghct(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "ghct" or n is not None:
                raise ParseError("expected a single header 'p ghct <n> <m>'", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be nonnegative", lineno)
        elif tok[0] == "e":
            if n is None:
                raise ParseError("edge line before the 'p' header", lineno)
            if len(tok) != 4:
                raise ParseError("expected 'e <u> <v> <weight>'", lineno)
            u, v = _vertex(tok[1], n, lineno), _vertex(tok[2], n, lineno)
            w = _number(tok[3], lineno, "weight")
            if u == v:
                raise ParseError(f"self-loop on vertex {u + 1}", lineno)
            if w <= 0:
                raise ParseError(f"weight must be positive, got {tok[3]}", lineno)
            edges.append((u, v, w))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p ghct <n> <m>' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def parse_dimacs_maxflow(text: str) -> tuple[Graph, int | None, int | None]:
    """Undirected graph plus 0-based source and sink from a DIMACS max-flow file."""
    n = None
    s = t = None
    merged: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "max" or n is not None:
                raise ParseError("expected a single header 'p max <n> <m>'", lineno)
            try:
                n = int(tok[2])
            except ValueError:
                raise ParseError("vertex count must be an integer", lineno) from None
        elif n is None:
            raise ParseError("line before the 'p' header", lineno)
        elif tok[0] == "n":
            if len(tok) != 3 or tok[2] not in ("s", "t"):
                raise ParseError("expected 'n <id> s|t'", lineno)
            v = _vertex(tok[1], n, lineno)
            if tok[2] == "s":
                s = v
            else:
                t = v
        elif tok[0] == "a":
            if len(tok) != 4:
                raise ParseError("expected 'a <u> <v> <capacity>'", lineno)
            u, v = _vertex(tok[1], n, lineno), _vertex(tok[2], n, lineno)
            w = _number(tok[3], lineno, "capacity")
            if u == v:
                raise ParseError(f"self-loop on vertex {u + 1}", lineno)
            if w < 0:
                raise ParseError(f"capacity must be nonnegative, got {tok[3]}", lineno)
            key = (min(u, v), max(u, v))
            merged[key] = merged.get(key, 0.0) + w
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p max <n> <m>' header")
    edges = tuple((u, v, w) for (u, v), w in merged.items() if w > 0)
    return Graph(n, edges), s, t


def read_graph(path) -> tuple[Graph, tuple[int, int] | None]:
    """Read a ``ghct`` or DIMACS max-flow file; DIMACS files also yield their terminals."""
    text = Path(path).read_text()
    for line in text.splitlines():
        tok = line.split()
        if tok and tok[0] == "p":
            if len(tok) > 1 and tok[1] == "max":
                g, s, t = parse_dimacs_maxflow(text)
                return g, (s, t) if s is not None and t is not None else None
            break
    return parse_ghct(text), None


def parse_graph(path) -> Graph:
    return read_graph(path)[0]


def format_ghct(g: Graph, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p ghct {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1} {format_weight(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def format_labels(values) -> str:
    return "".join(f"k {i + 1} {format_weight(x)}\n" for i, x in enumerate(values))


def parse_labels(text: str, m: int) -> list[float]:
    values: list[float | None] = [None] * m
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] != "k" or len(tok) != 3:
            raise ParseError("expected 'k <edge> <value>'", lineno)
        try:
            i = int(tok[1]) - 1
        except ValueError:
            raise ParseError(f"edge index {tok[1]!r} is not an integer", lineno) from None
        if not 0 <= i < m:
            raise ParseError(f"edge index {i + 1} outside 1..{m}", lineno)
        x = _number(tok[2], lineno, "label")
        if x <= 0:
            raise ParseError("labels must be positive", lineno)
        values[i] = x
    missing = [i + 1 for i, x in enumerate(values) if x is None]
    if missing:
        raise ParseError(f"no label for edges {missing[:5]}{'...' if len(missing) > 5 else ''}")
    return values  # type: ignore[return-value]


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
