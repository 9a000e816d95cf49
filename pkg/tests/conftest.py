import numpy as np
import pytest
from hypothesis import settings

from maxecd.generate import GenerationError, generate_graph
from maxecd.graph import chorded_ring_graph, make_cycle, make_graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def ring(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def small_eulerian(seed, n_lo=5, n_hi=9, m_cap=14):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_lo, n_hi + 1))
    top = n * (n - 1 if n % 2 else n - 2) // 2  # densest all-even simple graph
    m = int(rng.integers(n, min(m_cap, top) + 1))
    while True:  # a few (n, m) pairs have no even realization with min degree 2
        try:
            return generate_graph(n, m, rng, retries=20)
        except GenerationError:
            m -= 1


@pytest.fixture
def cr8():
    return chorded_ring_graph()


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def bowtie():
    return make_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def cyc(g, *verts):
    return make_cycle(g, verts)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
