import numpy as np
from hypothesis import given, settings, strategies as st

from maxecd.bnp import MasterModel, branch_and_bound
from maxecd.graph import validate_decomposition
from maxecd.greedy import greedy_runs
from maxecd.heuristic import build_pool, complete_with_greedy, ilp_heuristic, ilp_heuristic_from_runs
from maxecd.graph import Decomposition
from maxecd.oracle import enumerate_cycles, max_decomposition_bruteforce

from conftest import cyc, small_eulerian


def test_build_pool_examples(triangle, bowtie, cr8):
    pool, best = build_pool(triangle, 5, np.random.default_rng(0))
    assert pool == [cyc(triangle, 0, 1, 2)] and best == 1
    pool, best = build_pool(bowtie, 3, np.random.default_rng(0))
    assert set(pool) == {cyc(bowtie, 0, 1, 2), cyc(bowtie, 2, 3, 4)} and best == 2
    pool, best = build_pool(cr8, 100, np.random.default_rng(0))
    every = set(enumerate_cycles(cr8))
    assert len(pool) >= 3 and set(pool) <= every and len(set(pool)) == len(pool)


def test_ilp_heuristic_examples(triangle, cr8):
    d, _ = ilp_heuristic(triangle, 1, np.random.default_rng(0))
    assert len(d) == 1
    d, rep = ilp_heuristic(cr8, 100, np.random.default_rng(0))
    assert len(d) == 4 and validate_decomposition(cr8, d) and rep.optimal


def test_complete_with_greedy(cr8):
    part = Decomposition([cyc(cr8, 0, 1, 2)])
    full = complete_with_greedy(cr8, part, np.random.default_rng(1))
    assert cyc(cr8, 0, 1, 2) in full.cycles and validate_decomposition(cr8, full)


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(0, 99))
@settings(max_examples=40)
def test_dominates_greedy_and_bounded_by_oracle(seed, k, run_seed):
    g = small_eulerian(seed, 5, 9, 14)
    runs = greedy_runs(g, k, np.random.default_rng(run_seed))
    d, _ = ilp_heuristic_from_runs(g, runs, np.random.default_rng(run_seed + 1))
    assert validate_decomposition(g, d, require_complete=True)
    opt, _ = max_decomposition_bruteforce(g)
    assert max(len(r) for r in runs) <= len(d) <= opt


def test_full_pool_reaches_oracle():
    for seed in range(10):
        g = small_eulerian(seed, 5, 9, 14)
        rep = branch_and_bound(MasterModel(g, enumerate_cycles(g)))
        assert rep.objective == max_decomposition_bruteforce(g)[0]


def test_seeded_reproducible(cr8):
    a, _ = ilp_heuristic(cr8, 10, np.random.default_rng(3))
    b, _ = ilp_heuristic(cr8, 10, np.random.default_rng(3))
    assert a == b
