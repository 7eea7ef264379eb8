"""Exact max flow and the two sampling-based approximations built on it."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Cut, Graph, cut_value
from .sampling import SparsifyParams, compress, division_groups, smooth
from .strength import StrengthLabels, window_estimation

# Residual capacity at or below this fraction of the largest capacity counts as saturated.
FLOW_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class FlowAssignment:
    """Signed per-edge flows; positive means from ``edges[i][0]`` to ``edges[i][1]``."""

    flows: np.ndarray
    value: float
    source: int
    sink: int
    source_side: frozenset[int] | None = None

    def violations(self, g: Graph, tol: float = 1e-9) -> list[str]:
        """Human-readable capacity and conservation violations (empty when feasible)."""
        out = []
        scale = max(1.0, float(g.weights.max()) if g.m else 1.0)
        for i, ((u, v, w), f) in enumerate(zip(g.edges, self.flows)):
            if abs(f) > w + tol * scale:
                out.append(f"edge {i} ({u}, {v}): |flow| {abs(f)} exceeds capacity {w}")
        net = np.zeros(g.n)
        if g.m:
            np.add.at(net, g.endpoints[:, 0], self.flows)
            np.add.at(net, g.endpoints[:, 1], -self.flows)
        for x in range(g.n):
            if x not in (self.source, self.sink) and abs(net[x]) > tol * scale * max(1, g.m):
                out.append(f"vertex {x}: net outflow {net[x]}")
        if g.n and abs(net[self.source] - self.value) > tol * scale * max(1, g.m):
            out.append(f"source outflow {net[self.source]} != value {self.value}")
        if g.n and abs(net[self.sink] + self.value) > tol * scale * max(1, g.m):
            out.append(f"sink inflow {-net[self.sink]} != value {self.value}")
        return out


@dataclass(frozen=True, eq=False)
class CutResult:
    """An s-t cut measured in the original graph.

    ``compressed_value`` is the cut's value in the graph the flow was run on
    (equal to ``value`` for exact runs).
    """

    cut: Cut
    value: float
    compressed_value: float
    certificate: FlowAssignment | None = None


def max_flow(g: Graph, s: int, t: int) -> FlowAssignment:
    """Maximum ``s``-``t`` flow by blocking flows on BFS level graphs.

    Each undirected edge is a pair of opposite arcs that share its capacity.
    The returned ``source_side`` is the residual reachability set of ``s``,
    a minimum cut.
    """
    if s == t:
        raise ValueError("source and sink must differ")
    n, m = g.n, g.m
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError(f"source/sink out of range for n={n}")
    head = [0] * (2 * m)
    res = [0.0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v, w) in enumerate(g.edges):
        head[2 * i], head[2 * i + 1] = v, u
        res[2 * i] = res[2 * i + 1] = w
        adj[u].append(2 * i)
        adj[v].append(2 * i + 1)
    eps = FLOW_FLOOR * max(res, default=0.0)

    def levels():
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in adj[x]:
                y = head[a]
                if level[y] < 0 and res[a] > eps:
                    level[y] = level[x] + 1
                    queue.append(y)
        return level

    while True:
        level = levels()
        if level[t] < 0:
            break
        ptr = [0] * n
        while True:
            path: list[int] = []
            x = s
            while x != t:
                while ptr[x] < len(adj[x]):
                    a = adj[x][ptr[x]]
                    if res[a] > eps and level[head[a]] == level[x] + 1:
                        break
                    ptr[x] += 1
                else:
                    if x == s:
                        break
                    level[x] = -1
                    a = path.pop()
                    x = head[a ^ 1]
                    ptr[x] += 1
                    continue
                path.append(a)
                x = head[a]
            if x != t:
                break
            push = min(res[a] for a in path)
            for a in path:
                res[a] -= push
                res[a ^ 1] += push

    flows = np.array([(res[2 * i + 1] - res[2 * i]) / 2 for i in range(m)])
    level = levels()
    side = frozenset(x for x in range(n) if level[x] >= 0)
    value = math.fsum(f if u == s else -f for (u, v, _), f in zip(g.edges, flows) if s in (u, v))
    return FlowAssignment(flows, value, s, t, side)


def min_st_cut(g: Graph, s: int, t: int) -> CutResult:
    """Exact minimum ``s``-``t`` cut from a maximum flow."""
    flow = max_flow(g, s, t)
    value = cut_value(g, flow.source_side)
    return CutResult(Cut(flow.source_side, value), value, value, flow)


def approx_min_cut(
    g: Graph, s: int, t: int, params: SparsifyParams, labels: StrengthLabels | None = None
) -> CutResult:
    """Approximate minimum ``s``-``t`` cut via a compressed graph.

    Runs max flow on the compressed graph and evaluates the resulting
    residual-side cut in ``g``.  The reported ``value`` is always a real cut
    of ``g``; ``compressed_value`` is the max-flow value in the sample.
    """
    if labels is None:
        labels = window_estimation(g)
    comp = compress(g, labels, params)
    flow = max_flow(comp.graph, s, t)
    value = cut_value(g, flow.source_side)
    return CutResult(Cut(flow.source_side, value), value, flow.value, flow)


def approx_max_flow(
    g: Graph,
    s: int,
    t: int,
    params: SparsifyParams,
    labels: StrengthLabels | None = None,
    groups: int | None = None,
) -> FlowAssignment:
    """Approximate maximum flow by smoothing and random division.

    The graph is smoothed with ``c = m/n``, its pieces are split into
    ``ceil(1/p)`` random groups with ``p = rho/c``, an exact flow is found in
    each group and the flows are summed back onto the original edges.  The sum
    is always feasible in ``g``.  When ``p >= 1`` this is just :func:`max_flow`.
    ``groups`` forces the group count (for experiments below the threshold).
    """
    if s == t:
        raise ValueError("source and sink must differ")
    n, m = g.n, g.m
    if m == 0 or n < 2:
        return max_flow(g, s, t)
    c = m / n
    if groups is None:
        p = params.rho(n) / c
        if p >= 1:
            return max_flow(g, s, t)
        groups = math.ceil(1 / p)
    if labels is None:
        labels = window_estimation(g)
    sm = smooth(g, labels, c)
    parent = np.array(sm.parent, dtype=np.int64)
    which = division_groups(sm.graph, groups, params.seed)
    flows = np.zeros(m)
    values = []
    for j in range(groups):
        ids = np.flatnonzero(which == j)
        f = max_flow(sm.graph.subgraph(ids), s, t)
        np.add.at(flows, parent[ids], f.flows)
        values.append(f.value)
    return FlowAssignment(flows, math.fsum(values), s, t)
