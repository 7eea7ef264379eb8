"""Randomized graph transformations driven by strength labels.

Every draw comes from :func:`cutsparse.rng.edge_uniforms`, one uniform per
edge, so outputs are bit-identical for identical inputs and seed, and the
output edge order is always the original edge order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .graph import Graph
from .rng import STREAM_COMPRESS, STREAM_DIVISION, STREAM_UNIFORM, edge_uniforms
from .strength import StrengthLabels

MODES = ("bernoulli", "binomial", "simplified", "poisson")


def compression_factor(n: int, epsilon: float, d: float) -> float:
    """``3(d+4) ln n / eps^2``."""
    return 3 * (d + 4) * math.log(n) / epsilon**2


def basic_sampling_factor(n: int, epsilon: float, d: float) -> float:
    """``3(d+2) ln n / eps^2``, the threshold for uniform sampling of a ``c``-connected graph."""
    return 3 * (d + 2) * math.log(n) / epsilon**2


@dataclass(frozen=True)
class SparsifyParams:
    epsilon: float
    d: float = 1.0
    seed: int = 0
    mode: str = "simplified"
    integer_rounding: bool = False

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.d >= 1:
            raise ValueError(f"failure exponent d must be >= 1, got {self.d}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def rho(self, n: int) -> float:
        return compression_factor(n, self.epsilon, self.d)


@dataclass(frozen=True, eq=False)
class CompressedGraph:
    """A compressed graph plus the per-original-edge presence probabilities.

    ``origin[i]`` is the index in the input graph of output edge ``i``.
    """

    graph: Graph
    probabilities: np.ndarray
    origin: tuple[int, ...]
    params: SparsifyParams
    rho: float

    def expected_edges(self) -> float:
        return float(self.probabilities.sum())


def _check_labels(g: Graph, labels: StrengthLabels) -> np.ndarray:
    k = np.asarray(labels.values, dtype=float)
    if len(k) != g.m:
        raise ValueError(f"expected {g.m} labels, got {len(k)}")
    if g.m and not np.all(k > 0):
        raise ValueError("strength labels must be positive")
    return k


def _rounded(copy_weight: np.ndarray, weight: np.ndarray, sampled: np.ndarray):
    """Integer copy weights; edges where flooring would break expectation stay verbatim."""
    c = np.floor(copy_weight)
    bad = sampled & ((c < 1) | (c < weight))
    return np.where(sampled & ~bad, c, copy_weight), sampled & ~bad


def compress(g: Graph, labels: StrengthLabels, params: SparsifyParams) -> CompressedGraph:
    """Sample edges nonuniformly by strength and reweight so each edge keeps its expectation.

    Modes, with ``rho`` the compression factor and ``k`` the label of edge ``e``:

    * ``bernoulli``: keep with ``p = min(1, rho/k)``, weight ``u/p``.
    * ``binomial`` (integer weights): ``Binomial(u, p)`` surviving units, each of weight ``1/p``.
    * ``simplified``: keep with ``min(1, rho u/k)``, weight ``k/rho``; when
      ``rho u/k >= 1`` the edge is kept at its own weight.
    * ``poisson``: ``Poisson(rho u/k)`` copies of weight ``k/rho`` (verbatim when ``rho >= k``).

    With ``integer_rounding`` each copy weight is floored and the sampling rate
    raised so the expected weight is unchanged.
    """
    k = _check_labels(g, labels)
    n, m = g.n, g.m
    rho = params.rho(n) if n >= 2 else 0.0
    u = g.weights
    if n < 3 or m == 0:
        return CompressedGraph(g, np.ones(m), tuple(range(m)), params, rho)

    draws = edge_uniforms(params.seed, m, STREAM_COMPRESS)
    rounding = params.integer_rounding
    mode = params.mode
    if mode in ("bernoulli", "simplified"):
        if mode == "bernoulli":
            sampled = rho / k < 1
            copy = np.where(sampled, u * k / rho, u)
        else:
            sampled = rho * u / k < 1
            copy = np.where(sampled, k / rho, u)
        if rounding:
            copy, sampled = _rounded(copy, u, sampled)
        p = np.where(sampled, u / copy, 1.0)
        weight = np.where(draws < p, copy, 0.0)
    elif mode == "binomial":
        if not g.is_integral:
            raise ValueError("binomial mode needs integer edge weights")
        sampled = rho / k < 1
        # weight given to each surviving unit of the edge
        copy = np.where(sampled, k / rho, 1.0)
        if rounding:
            copy, sampled = _rounded(copy, np.ones(m), sampled)
        q = np.where(sampled, 1.0 / copy, 1.0)
        count = np.maximum(stats.binom.ppf(draws, u, q), 0)
        weight = np.where(sampled, count * copy, u)
        p = np.where(sampled, 1 - (1 - q) ** u, 1.0)
    else:
        sampled = rho / k < 1
        copy = np.where(sampled, k / rho, 1.0)
        if rounding:
            copy, sampled = _rounded(copy, np.ones(m), sampled)
        lam = np.where(sampled, u / copy, 1.0)
        count = np.maximum(stats.poisson.ppf(draws, lam), 0)
        weight = np.where(sampled, count * copy, u)
        p = np.where(sampled, -np.expm1(-lam), 1.0)

    keep = np.flatnonzero(weight > 0)
    out = Graph(n, tuple((g.edges[i][0], g.edges[i][1], float(weight[i])) for i in keep))
    return CompressedGraph(out, p, tuple(int(i) for i in keep), params, rho)


@dataclass(frozen=True, eq=False)
class SmoothedGraph:
    """Subdivided graph; ``parent[i]`` is the input edge that piece ``i`` came from."""

    graph: Graph
    parent: tuple[int, ...]
    labels: StrengthLabels


def smooth(g: Graph, labels: StrengthLabels, c: float) -> SmoothedGraph:
    """Split edge ``e`` into ``ceil(c u_e / k_e)`` equal parallel pieces.

    Pieces keep the parent's label, so every piece satisfies
    ``c * capacity <= label``.  Total capacity per edge is unchanged.
    """
    if not c > 0:
        raise ValueError(f"smoothness parameter must be positive, got {c}")
    k = _check_labels(g, labels)
    edges, parent, piece_labels = [], [], []
    for i, (u, v, w) in enumerate(g.edges):
        pieces = max(1, math.ceil(c * w / k[i]))
        edges.extend([(u, v, w / pieces)] * pieces)
        parent.extend([i] * pieces)
        piece_labels.extend([k[i]] * pieces)
    return SmoothedGraph(Graph(g.n, tuple(edges)), tuple(parent), StrengthLabels(piece_labels, labels.kind))


def uniform_sample(g: Graph, p: float, seed: int) -> Graph:
    """Keep each edge independently with probability ``p`` at its own weight."""
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    draws = edge_uniforms(seed, g.m, STREAM_UNIFORM)
    return g.subgraph(np.flatnonzero(draws < p))


def division_groups(g: Graph, groups: int, seed: int) -> np.ndarray:
    """Uniform random group index in ``0..groups-1`` for every edge."""
    if groups < 1:
        raise ValueError(f"groups must be >= 1, got {groups}")
    draws = edge_uniforms(seed, g.m, STREAM_DIVISION)
    return np.minimum((draws * groups).astype(np.int64), groups - 1)


def random_division(g: Graph, groups: int, seed: int) -> list[Graph]:
    """Partition the edges of ``g`` into ``groups`` random subgraphs."""
    which = division_groups(g, groups, seed)
    return [g.subgraph(np.flatnonzero(which == j)) for j in range(groups)]
