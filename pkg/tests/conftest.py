import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from cutsparse import Graph
from cutsparse.corpus import bridged_cliques, clique, cycle, full_corpus, random_corpus, star_paths


@st.composite
def graphs(draw, min_n=2, max_n=8, weighted=True, max_m=20):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a, b in itertools.combinations(range(n), 2)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=0, max_size=max_m))
    if weighted:
        ws = draw(st.lists(st.integers(1, 50), min_size=len(chosen), max_size=len(chosen)))
    else:
        ws = [1] * len(chosen)
    return Graph(n, tuple((a, b, float(w)) for (a, b), w in zip(chosen, ws)))


@st.composite
def sides(draw, n):
    mask = draw(st.lists(st.booleans(), min_size=n, max_size=n).filter(lambda m: 0 < sum(m) < n))
    return [i for i, x in enumerate(mask) if x]


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()


@pytest.fixture(scope="session")
def small_random():
    return random_corpus(count=30, max_n=10, seed=99)


@pytest.fixture
def k4_bridge():
    return bridged_cliques(4)


@pytest.fixture
def star():
    return star_paths(5)


def random_graph(rng: np.random.Generator, n: int, p: float, weighted: bool) -> Graph:
    edges = []
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((a, b, float(rng.integers(1, 20)) if weighted else 1.0))
    return Graph(n, tuple(edges))


__all__ = ["graphs", "sides", "random_graph", "clique", "cycle"]


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
