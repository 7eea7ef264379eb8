"""Sparse connectivity certificates, sparse partitions and weak-edge sets.

All three routines are deterministic.  Edge sets are returned as sorted
tuples of indices into the caller's graph, no matter how many contractions
happened in between.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .graph import Graph, connected_components, contract_with_ids, split_components

# Relative slack on threshold comparisons; errs towards including an edge.
_REL_TOL = 1e-9


def scan_thresholds(g: Graph) -> list[float]:
    """Forest-decomposition thresholds from a maximum-adjacency scan.

    Vertices are visited in maximum-adjacency order.  When vertex ``x`` is
    visited, each edge ``(x, y)`` to an unvisited ``y`` occupies the interval
    ``(r(y), r(y) + w]`` of the weighted forest decomposition, where ``r(y)``
    is the weight already attached from visited vertices to ``y``.  The
    returned threshold is the right end of that interval.

    The endpoints of an edge with threshold ``t`` are at least ``t``-connected
    in ``g``, so every edge crossing a cut of value ``<= k`` has threshold
    ``<= k``.
    """
    n = g.n
    adj: list[list[tuple[int, float, int]]] = [[] for _ in range(n)]
    for i, (u, v, w) in enumerate(g.edges):
        adj[u].append((v, w, i))
        adj[v].append((u, w, i))
    attach = [0.0] * n
    done = [False] * n
    thresholds = [0.0] * g.m
    heap = [(0.0, v) for v in range(n)]
    while heap:
        neg, x = heapq.heappop(heap)
        if done[x] or -neg != attach[x]:
            continue
        done[x] = True
        for y, w, i in adj[x]:
            if done[y]:
                continue
            attach[y] += w
            thresholds[i] = attach[y]
            heapq.heappush(heap, (-attach[y], y))
    return thresholds


def _certificate_ids(g: Graph, k: float) -> list[int]:
    limit = k * (1 + _REL_TOL)
    return [i for i, t in enumerate(scan_thresholds(g)) if t <= limit]


def sparse_certificate(g: Graph, k: float) -> tuple[int, ...]:
    """Edges of a sparse ``k``-connectivity certificate of ``g``.

    The result has total weight at most ``k(n-1)`` and contains every edge
    that crosses a cut of value ``k`` or less.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    return tuple(_certificate_ids(g, k))


@dataclass(frozen=True)
class PartitionResult:
    """An edge set ``edges`` and the component labelling of ``G - edges``."""

    edges: tuple[int, ...]
    components: tuple[int, ...]
    r: int

    def weight(self, g: Graph) -> float:
        return math.fsum(g.edges[i][2] for i in self.edges)


def _partition_ids(g: Graph, k: float, tight: bool) -> list[int]:
    ids = list(range(g.m))
    cur = g
    while True:
        if cur.m == 0:
            return []
        if not tight and cur.total_weight <= 2 * k * (cur.n - 1) * (1 + _REL_TOL):
            return ids
        cert = set(_certificate_ids(cur, k))
        if len(cert) == cur.m:
            return ids
        cur, _, kept = contract_with_ids(cur, (i for i in range(cur.m) if i not in cert))
        ids = [ids[i] for i in kept]


def partition(g: Graph, k: float, *, tight: bool = False) -> PartitionResult:
    """Sparse ``k``-partition of ``g``.

    Repeatedly takes a ``k``-certificate and contracts everything outside it
    until the contracted graph weighs at most ``2k(n'-1)``.  With ``tight``
    the loop instead continues until the certificate is the whole contracted
    graph, which lowers the weight bound to ``k(r-1)``.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    edges = tuple(sorted(_partition_ids(g, k, tight)))
    drop = set(edges)
    labels, r = connected_components(g, (i for i in range(g.m) if i not in drop))
    return PartitionResult(edges, tuple(labels), r)


def weak_edges(g: Graph, k: float, *, tight: bool = False) -> tuple[int, ...]:
    """A superset of the ``k``-weak edges (strength ``< k``) of ``g``.

    Runs ``ceil(log2 n)`` rounds; each round computes a ``2k``-partition of
    every remaining component and removes it.  If the output splits ``g``
    into ``r`` components its weight is at most ``4k(r-1)``.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    rounds = math.ceil(math.log2(g.n)) if g.n > 1 else 0
    remaining = list(range(g.m))
    out: list[int] = []
    for _ in range(rounds):
        if not remaining:
            break
        rest = g.subgraph(remaining)
        removed = set()
        for comp, comp_ids, _ in split_components(rest):
            for i in _partition_ids(comp, 2 * k, tight):
                removed.add(remaining[comp_ids[i]])
        out.extend(removed)
        remaining = [i for i in remaining if i not in removed]
    return tuple(sorted(out))
