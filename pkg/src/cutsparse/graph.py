"""Weighted undirected multigraphs and the pointwise graph arithmetic.

A :class:`Graph` is an immutable value: ``n`` dense vertex ids ``0..n-1`` and a
tuple of ``(u, v, weight)`` edges.  Edge identity is the position in that
tuple, so parallel edges stay distinguishable through sampling and smoothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError, InvalidCutError

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Weighted undirected multigraph on vertices ``0..n-1``.

    Self-loops are dropped on construction (they cross no cut).  Every
    remaining edge must have finite positive weight.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        clean = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if not (w > 0 and math.isfinite(w)):
                raise GraphError(f"edge ({u}, {v}) has invalid weight {w}")
            if u != v:
                clean.append((u, v, w))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.array([e[2] for e in self.edges], dtype=float)
        w.setflags(write=False)
        return w

    @cached_property
    def endpoints(self) -> np.ndarray:
        """``(m, 2)`` integer array of edge endpoints."""
        a = np.array([(e[0], e[1]) for e in self.edges], dtype=np.int64).reshape(-1, 2)
        a.setflags(write=False)
        return a

    @property
    def total_weight(self) -> float:
        return math.fsum(e[2] for e in self.edges)

    @property
    def is_unweighted(self) -> bool:
        return all(e[2] == 1.0 for e in self.edges)

    @property
    def is_integral(self) -> bool:
        return all(float(e[2]).is_integer() for e in self.edges)

    def with_weights(self, weights: Sequence[float]) -> Graph:
        if len(weights) != self.m:
            raise GraphError(f"expected {self.m} weights, got {len(weights)}")
        return Graph(self.n, tuple((u, v, float(w)) for (u, v, _), w in zip(self.edges, weights)))

    def subgraph(self, edge_ids: Iterable[int]) -> Graph:
        """Edge-induced subgraph on the same vertex set, in ``edge_ids`` order."""
        return Graph(self.n, tuple(self.edges[i] for i in edge_ids))

    def without(self, edge_ids: Iterable[int]) -> Graph:
        drop = set(edge_ids)
        return Graph(self.n, tuple(e for i, e in enumerate(self.edges) if i not in drop))

    def adjacency(self) -> np.ndarray:
        """Dense symmetric weight matrix; parallel edges are summed."""
        a = np.zeros((self.n, self.n))
        if self.m:
            ends = self.endpoints
            np.add.at(a, (ends[:, 0], ends[:, 1]), self.weights)
            np.add.at(a, (ends[:, 1], ends[:, 0]), self.weights)
        return a

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n)
        if self.m:
            np.add.at(d, self.endpoints[:, 0], self.weights)
            np.add.at(d, self.endpoints[:, 1], self.weights)
        return d


@dataclass(frozen=True)
class Cut:
    """One side of a vertex bipartition together with its crossing weight."""

    side: frozenset[int]
    value: float


class UnionFind:
    """Disjoint sets over ``0..n-1`` with union by rank and path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.count = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; return False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True

    def labels(self) -> tuple[list[int], int]:
        """Dense component labels, numbered by first appearance."""
        ids: dict[int, int] = {}
        out = []
        for v in range(len(self.parent)):
            out.append(ids.setdefault(self.find(v), len(ids)))
        return out, len(ids)


def _side_mask(n: int, side) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    side = list(side)
    if side and isinstance(side[0], (bool, np.bool_)) and len(side) == n:
        mask[:] = side
    else:
        for v in side:
            if not 0 <= v < n:
                raise InvalidCutError(f"vertex {v} out of range for n={n}")
            mask[v] = True
    return mask


def cut_value(g: Graph, side) -> float:
    """Total weight of edges with exactly one endpoint in ``side``.

    ``side`` is an iterable of vertex ids or a length-``n`` boolean mask.
    """
    mask = _side_mask(g.n, side)
    k = int(mask.sum())
    if k == 0 or k == g.n:
        raise InvalidCutError("cut side must be a nonempty proper subset of the vertices")
    return math.fsum(w for u, v, w in g.edges if mask[u] != mask[v])


def connected_components(g: Graph, edge_ids: Iterable[int] | None = None) -> tuple[list[int], int]:
    """Label vertices by connected component of ``g`` (or of the given edges)."""
    uf = UnionFind(g.n)
    it = g.edges if edge_ids is None else (g.edges[i] for i in edge_ids)
    for u, v, _ in it:
        uf.union(u, v)
    return uf.labels()


def contract(g: Graph, edge_ids: Iterable[int]) -> tuple[Graph, list[int]]:
    """Contract the given edges.

    Returns the quotient graph (loops removed, parallel edges kept, original
    edge order preserved among survivors) and the old-to-new vertex mapping.
    """
    mapping, r = connected_components(g, edge_ids)
    return Graph(r, tuple((mapping[u], mapping[v], w) for u, v, w in g.edges)), mapping


def contract_with_ids(g: Graph, edge_ids: Iterable[int]) -> tuple[Graph, list[int], list[int]]:
    """Like :func:`contract` but also returns, per surviving edge, its index in ``g``."""
    mapping, r = connected_components(g, edge_ids)
    kept, ids = [], []
    for i, (u, v, w) in enumerate(g.edges):
        if mapping[u] != mapping[v]:
            kept.append((mapping[u], mapping[v], w))
            ids.append(i)
    return Graph(r, tuple(kept)), mapping, ids


def scale(g: Graph, factors: Sequence[float]) -> Graph:
    """Pointwise product of edge weights with ``factors`` (one per edge)."""
    if len(factors) != g.m:
        raise GraphError(f"expected {g.m} scale factors, got {len(factors)}")
    return g.with_weights([w * f for (_, _, w), f in zip(g.edges, factors)])


def add(g: Graph, h: Graph) -> Graph:
    """Graph sum: the disjoint union of both edge lists on a shared vertex set."""
    if g.n != h.n:
        raise GraphError(f"vertex counts differ: {g.n} != {h.n}")
    return Graph(g.n, g.edges + h.edges)


def split_components(g: Graph) -> list[tuple[Graph, list[int], list[int]]]:
    """Split ``g`` into its components that carry at least one edge.

    Each entry is ``(component, edge_ids, vertex_ids)`` where the component
    uses local vertex ids ``0..len(vertex_ids)-1`` and ``edge_ids`` index ``g``.
    """
    labels, r = connected_components(g)
    verts: list[list[int]] = [[] for _ in range(r)]
    for v, c in enumerate(labels):
        verts[c].append(v)
    local = [0] * g.n
    for vs in verts:
        for i, v in enumerate(vs):
            local[v] = i
    edges: list[list[Edge]] = [[] for _ in range(r)]
    ids: list[list[int]] = [[] for _ in range(r)]
    for i, (u, v, w) in enumerate(g.edges):
        c = labels[u]
        edges[c].append((local[u], local[v], w))
        ids[c].append(i)
    return [(Graph(len(verts[c]), tuple(edges[c])), ids[c], verts[c]) for c in range(r) if ids[c]]
