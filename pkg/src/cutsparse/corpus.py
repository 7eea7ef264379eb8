"""Built-in graph families used by the verification suite and the tests."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph


def cycle(n: int, weight: float = 1.0) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n, weight) for i in range(n)))


def path(n: int, weight: float = 1.0) -> Graph:
    return Graph(n, tuple((i, i + 1, weight) for i in range(n - 1)))


def clique(n: int, weight: float = 1.0) -> Graph:
    return Graph(n, tuple((a, b, weight) for a, b in itertools.combinations(range(n), 2)))


def bridged_cliques(a: int, b: int | None = None) -> Graph:
    """``K_a`` and ``K_b`` joined by one unit edge between vertex 0 and vertex ``a``."""
    b = a if b is None else b
    edges = [(x, y, 1.0) for x, y in itertools.combinations(range(a), 2)]
    edges += [(a + x, a + y, 1.0) for x, y in itertools.combinations(range(b), 2)]
    edges.append((0, a, 1.0))
    return Graph(a + b, tuple(edges))


def circulant(n: int, offsets=(1, 2)) -> Graph:
    """Unit circulant graph; offsets ``(1, 2)`` give the 4-regular case."""
    return Graph(n, tuple((i, (i + j) % n, 1.0) for i in range(n) for j in offsets))


def star_paths(k: int) -> Graph:
    """Vertices ``s=0`` and ``t=k+1`` joined through ``k`` middle vertices."""
    edges = [(0, i, 1.0) for i in range(1, k + 1)] + [(i, k + 1, 1.0) for i in range(1, k + 1)]
    return Graph(k + 2, tuple(edges))


def erdos_renyi(n: int, p: float, seed: int, weighted: bool = False, max_exp: float = 6.0) -> Graph:
    """G(n, p) with fixed seed; weighted graphs get log-uniform weights in ``[1, 10^max_exp]``."""
    rng = np.random.default_rng(seed)
    edges = []
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(np.round(10 ** rng.uniform(0, max_exp), 2)) if weighted else 1.0
            edges.append((a, b, w))
    return Graph(n, tuple(edges))


def random_corpus(count: int = 50, max_n: int = 12, seed: int = 2024) -> list[tuple[str, Graph]]:
    """Seeded random graphs, alternating unit and weighted, ``4 <= n <= max_n``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(4, max_n + 1))
        p = float(rng.uniform(0.3, 0.9))
        weighted = i % 2 == 1
        g = erdos_renyi(n, p, seed=int(rng.integers(2**31)), weighted=weighted)
        out.append((f"er{i:02d}-n{n}-{'w' if weighted else 'u'}", g))
    return out


def full_corpus() -> list[tuple[str, Graph]]:
    """Cycles C_4..C_12, cliques K_4..K_8, bridged cliques, star paths and 50 random graphs."""
    out = [(f"C{n}", cycle(n)) for n in range(4, 13)]
    out += [(f"K{n}", clique(n)) for n in range(4, 9)]
    out += [("K4-K4", bridged_cliques(4)), ("K3-K5", bridged_cliques(3, 5)), ("K5-K6", bridged_cliques(5, 6))]
    out += [("star5", star_paths(5)), ("circ12", circulant(12))]
    return out + random_corpus()


def small_corpus() -> list[tuple[str, Graph]]:
    out = [(f"C{n}", cycle(n)) for n in (4, 6, 8)]
    out += [(f"K{n}", clique(n)) for n in (4, 5, 6)]
    out += [("K4-K4", bridged_cliques(4)), ("star4", star_paths(4)), ("circ10", circulant(10))]
    return out + random_corpus(count=6, max_n=9, seed=7)
