"""Exhaustive ground truth for small graphs.

Everything here enumerates vertex subsets or bipartitions directly and is
meant for tests and the ``verify`` command, never for production paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import SizeCapError
from .graph import Cut, Graph
from .rng import STREAM_COMPRESS, edge_uniforms

STRENGTH_CAP = 14
CUT_CAP = 20


def _check_cap(g: Graph, cap: int):
    if g.n > cap:
        raise SizeCapError(f"oracle limited to n <= {cap}, got n={g.n}")


@lru_cache(maxsize=None)
def side_patterns(n: int) -> np.ndarray:
    """All ``2^(n-1) - 1`` proper bipartitions of ``n`` vertices as a 0/1 matrix.

    Row ``j`` is the indicator of the side not containing vertex ``n-1``,
    encoded by bitmask ``j + 1``.
    """
    if n < 2:
        return np.zeros((0, n))
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1
    bits.setflags(write=False)
    return bits.astype(float)


def crossing_matrix(g: Graph) -> np.ndarray:
    """Boolean ``(cuts, m)`` matrix: entry ``(j, e)`` says edge ``e`` crosses cut ``j``."""
    _check_cap(g, CUT_CAP)
    x = side_patterns(g.n).astype(bool)
    if g.m == 0:
        return np.zeros((len(x), 0), dtype=bool)
    ends = g.endpoints
    return x[:, ends[:, 0]] != x[:, ends[:, 1]]


def all_cut_values(g: Graph, weights: Sequence[float] | None = None) -> np.ndarray:
    """Values of every proper bipartition, in :func:`side_patterns` order."""
    _check_cap(g, CUT_CAP)
    w = g.weights if weights is None else np.asarray(weights, dtype=float)
    x = side_patterns(g.n).astype(bool)
    vals = np.zeros(len(x))
    for (u, v), wt in zip(g.endpoints, w):
        vals += wt * (x[:, u] != x[:, v])
    return vals


def _side_of(n: int, row: int) -> frozenset[int]:
    mask = row + 1
    return frozenset(v for v in range(n) if mask >> v & 1)


def enumerate_cuts(g: Graph) -> dict[frozenset[int], float]:
    """Map each bipartition (keyed by the side without vertex ``n-1``) to its value."""
    vals = all_cut_values(g)
    return {_side_of(g.n, j): float(v) for j, v in enumerate(vals)}


def oracle_min_cut(g: Graph) -> Cut:
    vals = all_cut_values(g)
    if len(vals) == 0:
        raise ValueError("a graph needs at least two vertices to have a cut")
    j = int(np.argmin(vals))
    return Cut(_side_of(g.n, j), float(vals[j]))


def oracle_min_st_cut(g: Graph, s: int, t: int) -> Cut:
    """Minimum cut separating ``s`` and ``t``; the returned side contains ``s``."""
    if s == t:
        raise ValueError("source and sink must differ")
    vals = all_cut_values(g)
    x = side_patterns(g.n).astype(bool)
    sep = np.flatnonzero(x[:, s] != x[:, t])
    j = int(sep[np.argmin(vals[sep])])
    side = _side_of(g.n, j)
    if s not in side:
        side = frozenset(range(g.n)) - side
    return Cut(side, float(vals[j]))


def oracle_standard_connectivity(g: Graph, e: int) -> float:
    """Minimum value of a cut separating the endpoints of edge ``e``."""
    _check_cap(g, STRENGTH_CAP)
    u, v, _ = g.edges[e]
    return oracle_min_st_cut(g, u, v).value


def oracle_sparsest_cut(g: Graph) -> tuple[Cut, float]:
    """Cut minimising ``value / (|S| * |V - S|)`` and that ratio."""
    vals = all_cut_values(g)
    sizes = side_patterns(g.n).sum(axis=1)
    ratios = vals / (sizes * (g.n - sizes))
    j = int(np.argmin(ratios))
    return Cut(_side_of(g.n, j), float(vals[j])), float(ratios[j])


def oracle_strengths(g: Graph, cap: int = STRENGTH_CAP) -> np.ndarray:
    """Exact strength of every edge by induced-subgraph enumeration.

    ``k_e`` is the largest connectivity (minimum cut) of a vertex-induced
    subgraph containing both endpoints of ``e``.  Subsets are visited from
    large to small and skipped when their minimum induced degree cannot beat
    the best value already found for any edge inside them.
    """
    _check_cap(g, cap)
    n, m = g.n, g.m
    best = np.zeros(m)
    if m == 0:
        return best
    adj = g.adjacency()
    ends = g.endpoints
    edge_masks = (np.int64(1) << ends[:, 0]) | (np.int64(1) << ends[:, 1])
    subsets = sorted(range(3, 1 << n), key=lambda s: -s.bit_count())
    for s in subsets:
        inside = (edge_masks & s) == edge_masks
        if not inside.any():
            continue
        vs = [v for v in range(n) if s >> v & 1]
        sub = adj[np.ix_(vs, vs)]
        if sub.sum(axis=1).min() <= best[inside].min():
            continue
        x = side_patterns(len(vs))
        conn = float(((x @ sub) * (1 - x)).sum(axis=1).min())
        np.maximum.at(best, np.flatnonzero(inside), conn)
    return best


@dataclass(frozen=True)
class OracleReport:
    strengths: np.ndarray
    min_cut: Cut
    sparsest: tuple[Cut, float]
    all_cuts: dict[frozenset[int], float] | None = None


def oracle_report(g: Graph, include_all_cuts: bool = False) -> OracleReport:
    return OracleReport(
        strengths=oracle_strengths(g),
        min_cut=oracle_min_cut(g),
        sparsest=oracle_sparsest_cut(g),
        all_cuts=enumerate_cuts(g) if include_all_cuts else None,
    )


@dataclass(frozen=True)
class EdgeDistribution:
    """Finite discrete distribution of one edge's random weight."""

    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.probs) or not self.values:
            raise ValueError("values and probs must be nonempty and of equal length")
        if any(p < 0 for p in self.probs) or abs(math.fsum(self.probs) - 1) > 1e-9:
            raise ValueError("probs must be a probability vector")
        if any(v < 0 for v in self.values):
            raise ValueError("edge weights must be nonnegative")

    @property
    def mean(self) -> float:
        return math.fsum(v * p for v, p in zip(self.values, self.probs))

    @property
    def max(self) -> float:
        return max(v for v, p in zip(self.values, self.probs) if p > 0)

    @classmethod
    def constant(cls, value: float) -> EdgeDistribution:
        return cls((value,), (1.0,))

    @classmethod
    def compression(cls, weight: float, p: float) -> EdgeDistribution:
        """Weight ``weight / p`` with probability ``p``, else 0 (the compression coin)."""
        if p >= 1:
            return cls.constant(weight)
        return cls((weight / p, 0.0), (p, 1 - p))


@dataclass(frozen=True)
class HarnessResult:
    failure_rate: float
    failures: int
    trials: int
    precondition_ok: bool
    # min over edges of k_e * eps^2 / (2 m_e ln n); >= 1 means compliant
    min_margin: float


def appendix_harness(
    g: Graph,
    distributions: Sequence[EdgeDistribution],
    epsilon: float,
    trials: int,
    seed: int,
    stream: int = STREAM_COMPRESS,
    cap: int = 12,
) -> HarnessResult:
    """Empirical rate at which some cut leaves ``(1 +- epsilon)`` of its expectation.

    Edge ``e`` of ``g`` takes a random weight from ``distributions[e]``; the
    expectation graph (weights ``E[U_e]``) supplies the strengths used for the
    precondition ``k_e >= 2 m_e ln n / eps^2``, which is reported, not enforced.
    Trial ``t`` draws its uniforms with seed ``seed + t`` using the same
    per-edge inversion rule as compression, so a compression distribution
    reproduces :func:`cutsparse.sampling.compress` outcomes exactly.
    """
    _check_cap(g, cap)
    if len(distributions) != g.m:
        raise ValueError(f"expected {g.m} distributions, got {len(distributions)}")
    means = np.array([d.mean for d in distributions])
    maxes = np.array([d.max for d in distributions])
    support = means > 0
    expect_graph = Graph(g.n, tuple((u, v, w) for (u, v, _), w, s in zip(g.edges, means, support) if s))
    k = np.zeros(g.m)
    k[support] = oracle_strengths(expect_graph, cap=cap)
    if g.n >= 2:
        need = 2 * maxes[support] * math.log(g.n) / epsilon**2
        min_margin = float((k[support] / need).min()) if support.any() else math.inf
    else:
        min_margin = math.inf

    width = max(len(d.values) for d in distributions) if distributions else 1
    vals = np.zeros((g.m, width))
    cum = np.ones((g.m, width))
    for e, d in enumerate(distributions):
        vals[e, : len(d.values)] = d.values
        cum[e, : len(d.probs)] = np.cumsum(d.probs)
    cross = crossing_matrix(g).astype(float)
    expected = cross @ means
    failures = 0
    for t in range(trials):
        u = edge_uniforms(seed + t, g.m, stream)
        idx = np.minimum((u[:, None] >= cum).sum(axis=1), width - 1)
        sample = cross @ vals[np.arange(g.m), idx]
        if np.any(np.abs(sample - expected) > epsilon * expected + 1e-12):
            failures += 1
    return HarnessResult(failures / trials if trials else 0.0, failures, trials, min_margin >= 1, min_margin)
