"""Lower bounds on edge strengths.

:func:`estimation` labels edges by repeatedly peeling weak edges at doubling
thresholds.  :func:`window_estimation` handles arbitrary weights by running
:func:`estimation` on a sliding window of maximum-spanning-tree bounds, so the
number of doublings per phase stays ``O(log n)`` however large the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .certificate import weak_edges
from .errors import EstimationError
from .graph import Graph, UnionFind, split_components
from .oracle import STRENGTH_CAP, oracle_strengths

EXACT = "exact"
ESTIMATED = "estimated"


@dataclass(frozen=True, eq=False)
class StrengthLabels:
    """Per-edge strength lower bounds, aligned with the graph's edge order."""

    values: np.ndarray
    kind: str = ESTIMATED

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def cost(self, g: Graph) -> float:
        """``sum u_e / label_e``."""
        return math.fsum(g.weights / self.values) if g.m else 0.0


@dataclass(frozen=True, eq=False)
class MstBounds:
    """``d_e``: the lightest weight on the maximum-spanning-forest path of ``e``."""

    d: np.ndarray
    tree: np.ndarray = field(repr=False)


def mst_bounds(g: Graph) -> MstBounds:
    """Offline maximum-spanning-forest path minima.

    Edges are merged by decreasing weight into a union-by-rank forest without
    path compression, recording the weight of each link.  The weight at which
    two endpoints first became connected is the smallest link on the forest
    path between them, found by climbing both to their meeting point.
    """
    n, m = g.n, g.m
    parent = list(range(n))
    rank = [0] * n
    link = [math.inf] * n
    tree = np.zeros(m, dtype=bool)

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i in sorted(range(m), key=lambda i: -g.edges[i][2]):
        u, v, w = g.edges[i]
        ru, rv = root(u), root(v)
        if ru == rv:
            continue
        if rank[ru] < rank[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        link[rv] = w
        if rank[ru] == rank[rv]:
            rank[ru] += 1
        tree[i] = True

    d = np.empty(m)
    for i, (u, v, _) in enumerate(g.edges):
        seen = {}
        lo, x = math.inf, u
        while True:
            seen[x] = lo
            if parent[x] == x:
                break
            lo = min(lo, link[x])
            x = parent[x]
        lo, x = math.inf, v
        while x not in seen:
            lo = min(lo, link[x])
            x = parent[x]
        d[i] = min(lo, seen[x])
    d.setflags(write=False)
    return MstBounds(d, tree)


def estimation(g: Graph, k0: float = 1.0, *, tight: bool = True) -> StrengthLabels:
    """Label every edge with a strength lower bound.

    Assumes every edge of ``g`` has strength at least ``k0``.  At threshold
    ``k`` the weak edges for ``2k`` are labelled ``k`` and removed; each
    remaining nontrivial component recurses with ``2k``.

    ``tight`` selects the fixed-point partition inside the weak-edge search;
    it keeps ``sum u_e / label_e <= 4(n-1)`` rather than ``8(n-1)``.
    """
    if not k0 > 0:
        raise ValueError(f"k0 must be positive, got {k0}")
    labels = np.zeros(g.m)
    stack = [(comp, ids, k0) for comp, ids, _ in split_components(g)]
    while stack:
        h, ids, k = stack.pop()
        out = weak_edges(h, 2 * k, tight=tight)
        if not out and k > h.total_weight:
            raise EstimationError(f"no weak edges at k={k} in a component of weight {h.total_weight}")
        for i in out:
            labels[ids[i]] = k
        rest = h.without(out)
        drop = set(out)
        keep = [i for i in range(h.m) if i not in drop]
        for comp, sub_ids, _ in split_components(rest):
            stack.append((comp, [ids[keep[j]] for j in sub_ids], 2 * k))
    return StrengthLabels(labels, ESTIMATED)


def window_estimation(g: Graph, *, tight: bool = True) -> StrengthLabels:
    """Strength lower bounds for arbitrary positive weights.

    Each phase takes the largest unlabelled ``d_e`` as ``D``, contracts the
    accumulated edges with ``d_e > n^2 D``, admits every edge with
    ``d_e >= D/n`` and runs :func:`estimation` from ``D/n`` on the result,
    keeping the labels of the newly admitted edges only.
    """
    n, m = g.n, g.m
    labels = np.zeros(m)
    if m == 0:
        return StrengthLabels(labels, ESTIMATED)
    d = mst_bounds(g).d
    order = sorted(range(m), key=lambda i: -d[i])
    uf = UnionFind(n)
    admitted: list[int] = []
    pos = 0
    while pos < m:
        top = d[order[pos]]
        for e in admitted:
            if d[e] > n * n * top:
                uf.union(g.edges[e][0], g.edges[e][1])
        admitted = [e for e in admitted if d[e] <= n * n * top]
        start = len(admitted)
        while pos < m and d[order[pos]] >= top / n:
            admitted.append(order[pos])
            pos += 1
        roots: dict[int, int] = {}
        edges = []
        for e in admitted:
            u, v, w = g.edges[e]
            edges.append((roots.setdefault(uf.find(u), len(roots)), roots.setdefault(uf.find(v), len(roots)), w))
        window = Graph(len(roots), tuple(edges))
        if window.m != len(admitted):
            raise EstimationError("an admitted edge was contracted into a loop")
        phase = estimation(window, top / n, tight=tight)
        for j in range(start, len(admitted)):
            labels[admitted[j]] = phase.values[j]
    return StrengthLabels(labels, ESTIMATED)


def exact_strengths(g: Graph, cap: int = STRENGTH_CAP) -> StrengthLabels:
    """True strengths via the exhaustive oracle; raises above ``cap`` vertices."""
    return StrengthLabels(oracle_strengths(g, cap=cap), EXACT)
