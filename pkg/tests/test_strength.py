import math

import numpy as np
import pytest
from hypothesis import given, settings

from cutsparse import EstimationError, Graph, StrengthLabels, contract, estimation, exact_strengths, mst_bounds, window_estimation
from cutsparse.corpus import bridged_cliques, clique, cycle, full_corpus, star_paths
from cutsparse.oracle import oracle_strengths
from cutsparse.strength import ESTIMATED, EXACT

from .conftest import graphs

CORPUS = full_corpus()


def labels_for(g):
    return estimation(g) if g.is_unweighted else window_estimation(g)


def test_single_edge():
    g = Graph(2, ((0, 1, 1.0),))
    assert list(estimation(g).values) == [1]


def test_bridged_cliques_labels():
    g = bridged_cliques(4)
    lab = estimation(g).values
    assert lab[-1] <= 1 and all(lab[:-1] <= 3)


def test_cycle_labels():
    lab = estimation(cycle(8)).values
    assert set(lab) <= {1, 2}
    assert math.fsum(1 / lab) <= 4 * 7


def test_mst_bounds_examples():
    tree = Graph(4, ((0, 1, 2.0), (1, 2, 5.0), (1, 3, 0.5)))
    assert list(mst_bounds(tree).d) == [2, 5, 0.5]
    tri = Graph(3, ((0, 1, 5.0), (1, 2, 3.0), (0, 2, 1.0)))
    b = mst_bounds(tri)
    assert list(b.d) == [5, 3, 3]
    assert list(mst_bounds(clique(4)).d) == [1] * 6


def test_window_matches_estimation_on_unit_graphs():
    for g in (cycle(7), clique(5), bridged_cliques(3, 4)):
        np.testing.assert_array_equal(window_estimation(g).values, estimation(g, 1 / g.n).values)


def test_window_single_heavy_edge():
    g = Graph(2, ((0, 1, 1e9),))
    lab = window_estimation(g)
    assert lab.values[0] <= 1e9
    assert lab.cost(g) <= 12


def test_window_heavy_and_light_phases():
    n = 6
    heavy = float(n**3)
    g = Graph(n, ((0, 1, heavy), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 0, 1.0), (0, 3, 1.0)))
    lab = window_estimation(g).values
    k = oracle_strengths(g)
    assert all(lab <= k)
    # the heavy edge is labelled within a factor n^2 of its strength; unit edges near 1
    assert lab[0] >= heavy / n**2
    assert all(lab[1:] <= 2)


def test_exact_strengths():
    lab = exact_strengths(cycle(6))
    assert lab.kind == EXACT and list(lab.values) == [2] * 6
    assert list(exact_strengths(clique(6)).values) == [5] * 15
    # every star edge has strength 2; see the decisions ledger
    assert list(exact_strengths(star_paths(5)).values) == [2] * 10


def test_labels_are_read_only():
    lab = StrengthLabels([1.0, 2.0])
    assert lab.kind == ESTIMATED
    with pytest.raises(ValueError):
        lab.values[0] = 3


def test_estimation_rejects_bad_floor():
    with pytest.raises(ValueError):
        estimation(cycle(4), 0)


def test_estimation_progress_guard(monkeypatch):
    import cutsparse.strength as strength

    monkeypatch.setattr(strength, "weak_edges", lambda g, k, tight=True: ())
    with pytest.raises(EstimationError):
        estimation(Graph(3, ((0, 1, 1.0), (1, 2, 1.0))))


@pytest.mark.parametrize("name,g", CORPUS, ids=[c[0] for c in CORPUS])
def test_soundness_and_cost(name, g):
    k = oracle_strengths(g)
    lab = labels_for(g)
    assert np.all(lab.values <= k * (1 + 1e-12))
    limit = 4 if g.is_unweighted else 12
    assert lab.cost(g) <= limit * (g.n - 1)


@pytest.mark.parametrize("name,g", CORPUS, ids=[c[0] for c in CORPUS])
def test_d_bounds(name, g):
    k = oracle_strengths(g)
    d = mst_bounds(g).d
    assert np.all(d <= k * (1 + 1e-12))
    assert np.all(k <= g.n**2 * d)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_window_sound_on_random_weights(g):
    if g.m == 0:
        return
    k = oracle_strengths(g)
    lab = window_estimation(g)
    assert np.all(lab.values > 0)
    assert np.all(lab.values <= k * (1 + 1e-12))
    assert lab.cost(g) <= 12 * (g.n - 1)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_contracting_heavy_edges_keeps_weak_strengths(g):
    if g.m == 0:
        return
    k = oracle_strengths(g)
    w_cut = float(np.median(g.weights))
    heavy = [i for i in range(g.m) if g.edges[i][2] >= w_cut]
    h, mapping = contract(g, heavy)
    survivors = [i for i in range(g.m) if mapping[g.edges[i][0]] != mapping[g.edges[i][1]]]
    kh = oracle_strengths(h) if h.m else []
    for j, i in enumerate(survivors):
        if k[i] < w_cut:
            assert kh[j] == pytest.approx(k[i])


def test_loose_partition_still_sound():
    for name, g in CORPUS[:20]:
        k = oracle_strengths(g)
        lab = estimation(g, tight=False) if g.is_unweighted else window_estimation(g, tight=False)
        assert np.all(lab.values <= k * (1 + 1e-12)), name
