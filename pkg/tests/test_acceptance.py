"""Acceptance criteria 1-11, each reported as one PASS/FAIL line."""

import itertools
import math
import time

import numpy as np
import pytest

from cutsparse import (
    Graph,
    SparsifyParams,
    approx_max_flow,
    approx_min_cut,
    compress,
    connected_components,
    estimation,
    max_flow,
    smooth,
    weak_edges,
    window_estimation,
)
from cutsparse.corpus import circulant, cycle, erdos_renyi, full_corpus
from cutsparse.oracle import EdgeDistribution, all_cut_values, appendix_harness, crossing_matrix, oracle_min_st_cut, oracle_strengths

RESULTS: dict[int, str] = {}


def record(num: int, ok: bool, detail: str):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return full_corpus()


@pytest.fixture(scope="module")
def strengths(corpus):
    return {name: oracle_strengths(g) for name, g in corpus}


@pytest.fixture(scope="module")
def labels(corpus):
    return {name: estimation(g) if g.is_unweighted else window_estimation(g) for name, g in corpus}


def test_criterion_01_strength_sum(corpus):
    start = time.perf_counter()
    worst = -math.inf
    for _, g in corpus:
        k = oracle_strengths(g)
        worst = max(worst, math.fsum(g.weights / k) - (g.n - 1))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 120
    record(1, ok, f"{len(corpus)} graphs, max sum(u/k)-(n-1) = {worst:.3g}, {elapsed:.1f}s")


def test_criterion_02_unit_min_cut(corpus, strengths):
    worst, checked = 0.0, 0
    for name, g in corpus:
        if connected_components(g)[1] != 1:
            continue
        checked += 1
        worst = max(worst, abs(float(all_cut_values(g, g.weights / strengths[name]).min()) - 1))
    record(2, worst <= 1e-9, f"{checked} connected graphs, max |min cut - 1| = {worst:.3g}")


def test_criterion_03_label_soundness(corpus, strengths, labels):
    unsound, edges = 0, 0
    worst = {True: 0.0, False: 0.0}
    for name, g in corpus:
        lab = labels[name].values
        unsound += int(np.sum(lab > strengths[name] * (1 + 1e-12)))
        edges += g.m
        ratio = labels[name].cost(g) / (g.n - 1)
        worst[g.is_unweighted] = max(worst[g.is_unweighted], ratio)
    ok = unsound == 0 and worst[True] <= 4 and worst[False] <= 12
    record(3, ok, f"{unsound}/{edges} labels above strength, max cost/(n-1): unit {worst[True]:.3f} (<=4), weighted {worst[False]:.3f} (<=12)")


def test_criterion_04_weak_edges(corpus, strengths):
    missing, over, runs = 0, 0, 0
    for name, g in corpus:
        k = strengths[name]
        for kk in (1, 2, 4, 8):
            out = set(weak_edges(g, kk))
            missing += sum(1 for i in range(g.m) if k[i] < kk and i not in out)
            r = connected_components(g, (i for i in range(g.m) if i not in out))[1]
            if math.fsum(g.edges[i][2] for i in out) > 4 * kk * (r - 1) * (1 + 1e-9) + 1e-9:
                over += 1
            runs += 1
    record(4, missing == 0 and over == 0, f"{runs} runs, {missing} weak edges missed, {over} weight-bound violations")


def test_criterion_05_compression_edge_count():
    start = time.perf_counter()
    n, m_target = 512, 8000
    params = SparsifyParams(0.5, 1.0)
    rho = params.rho(n)
    counts, sampled = [], 0
    for gseed in range(3):
        g = erdos_renyi(n, m_target / (n * (n - 1) / 2), seed=1000 + gseed)
        lab = estimation(g)
        for seed in range(30):
            out = compress(g, lab, SparsifyParams(0.5, 1.0, seed=seed))
            counts.append(out.graph.m)
            sampled += int(np.sum(out.probabilities < 1))
    elapsed = time.perf_counter() - start
    mean = float(np.mean(counts))
    bound = rho * 4 * (n - 1)
    ok = mean <= bound and elapsed < 60
    record(5, ok, f"rho={rho:.1f}, mean edges {mean:.1f} <= {bound:.0f}, sampled edge-draws {sampled}, {elapsed:.1f}s")


def test_criterion_06_cut_accuracy(corpus, labels):
    start = time.perf_counter()
    worst_excess, active, bad_graphs = -math.inf, 0, []
    for name, g in corpus:
        if g.n > 12 or g.m == 0:
            continue
        cross = crossing_matrix(g).astype(float)
        truth = cross @ g.weights
        lab = labels[name]
        failures, sampled = 0, False
        for seed in range(200):
            out = compress(g, lab, SparsifyParams(0.5, 1.0, seed=seed))
            sampled |= bool(np.any(out.probabilities < 1))
            w = np.zeros(g.m)
            w[list(out.origin)] = out.graph.weights
            failures += bool(np.any(np.abs(cross @ w - truth) > 0.5 * truth + 1e-9))
        active += sampled
        rate = failures / 200
        worst_excess = max(worst_excess, rate - 1 / g.n)
        if rate > 1 / g.n:
            bad_graphs.append(name)
    elapsed = time.perf_counter() - start
    ok = not bad_graphs and elapsed < 300
    record(6, ok, f"{active} graphs with real sampling, max (rate - 1/n) = {worst_excess:.3f}, failing {bad_graphs}, {elapsed:.1f}s")


def test_criterion_07_smoothing(corpus, labels):
    violations, runs = 0, 0
    for name, g in corpus:
        lab = labels[name]
        for c in (1.0, g.m / g.n, 4.0, 8.0):
            sm = smooth(g, lab, c)
            runs += 1
            if sm.graph.m > g.m + c * lab.cost(g) + 1e-9:
                violations += 1
            caps = sm.graph.weights
            if np.any(c * caps > sm.labels.values * (1 + 1e-12)):
                violations += 1
    record(7, violations == 0, f"{runs} smoothing runs, {violations} bound violations")


def flow_graphs():
    out = [("circ16", circulant(16))]
    for i, n in enumerate((13, 15, 17, 20)):
        out.append((f"er-n{n}-u", erdos_renyi(n, 0.4, seed=50 + i)))
        out.append((f"er-n{n}-w", erdos_renyi(n, 0.4, seed=60 + i, weighted=True, max_exp=6)))
    return out


def test_criterion_08_flow_approximation():
    start = time.perf_counter()
    infeasible, bad, forced_infeasible = 0, [], 0
    forced_frac = []
    for name, g in flow_graphs():
        s, t = 0, g.n - 1
        v = max_flow(g, s, t).value
        lab = window_estimation(g)
        good = 0
        for seed in range(100):
            params = SparsifyParams(0.5, 1.0, seed=seed)
            f = approx_max_flow(g, s, t, params, lab)
            infeasible += bool(f.violations(g))
            good += f.value >= 0.5 * v - 1e-9
            forced = approx_max_flow(g, s, t, params, lab, groups=2)
            forced_infeasible += bool(forced.violations(g))
            forced_frac.append(forced.value >= 0.5 * v - 1e-9)
        if good / 100 < 1 - 1 / g.n:
            bad.append(name)
    elapsed = time.perf_counter() - start
    ok = infeasible == 0 and forced_infeasible == 0 and not bad and elapsed < 300
    record(
        8,
        ok,
        f"{infeasible}+{forced_infeasible} infeasible runs, graphs below (1-1/n): {bad}, "
        f"forced 2-group runs reaching (1-eps)v: {np.mean(forced_frac):.2f}, {elapsed:.1f}s",
    )


def test_criterion_09_approx_min_cut(corpus, labels):
    start = time.perf_counter()
    below, bad, graphs = 0, [], 0
    cases = [("C10-eps0.3", cycle(10), 0.3, 0, 5, None)]
    cases += [(name, g, 0.5, 0, g.n - 1, labels[name]) for name, g in corpus if g.n <= 12]
    for name, g, eps, s, t, lab in cases:
        v = oracle_min_st_cut(g, s, t).value
        graphs += 1
        within = 0
        for seed in range(200):
            res = approx_min_cut(g, s, t, SparsifyParams(eps, 1.0, seed=seed), lab)
            below += res.value < v - 1e-9 * max(1, v)
            within += res.value <= (1 + 3 * eps) * v + 1e-9 * max(1, v)
        if within / 200 < 1 - 1 / g.n:
            bad.append(name)
    elapsed = time.perf_counter() - start
    ok = below == 0 and not bad and elapsed < 300
    record(9, ok, f"{graphs} graphs x 200 seeds, {below} cuts below v, graphs outside (1+3eps): {bad}, {elapsed:.1f}s")


def test_criterion_10_duality(corpus):
    pairs, mismatches = 0, 0
    for _, g in corpus:
        if g.n > 10:
            continue
        for s, t in itertools.combinations(range(g.n), 2):
            f = max_flow(g, s, t).value
            c = oracle_min_st_cut(g, s, t).value
            pairs += 1
            if g.is_integral:
                mismatches += f != c
            else:
                mismatches += abs(f - c) > 1e-9 * max(1.0, c)
    record(10, mismatches == 0, f"{pairs} (s,t) pairs, {mismatches} mismatches")


def test_criterion_11_appendix_harness():
    n = 10
    g = Graph(n, tuple((a, b, 1.0) for a, b in itertools.combinations(range(n), 2) for _ in range(5)))
    dists = [EdgeDistribution((0.0, 2.0), (0.5, 0.5))] * g.m
    res = appendix_harness(g, dists, epsilon=0.5, trials=500, seed=11)
    ok = res.precondition_ok and res.failure_rate <= 1 / n
    record(11, ok, f"margin {res.min_margin:.3f}, failure rate {res.failure_rate:.3f} over {res.trials} trials (<= {1 / n})")
