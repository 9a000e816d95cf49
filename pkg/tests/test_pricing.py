import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxecd.graph import make_graph
from maxecd.oracle import enumerate_cycles
from maxecd.pricing import (PricingBudgetExceeded, cycle_weight, minimum_weight_cycle,
                            minimum_weight_cycle_avoiding, price)

from conftest import cyc, ring, small_eulerian


def brute_min(g, w, forbidden=(), blocked=()):
    bad = {c.vertices for c in forbidden}
    ws = [cycle_weight(c, w) for c in enumerate_cycles(g)
          if c.vertices not in bad and not (c.edge_indices & set(blocked))]
    return min(ws) if ws else None


def test_minimum_weight_cycle_examples(cr8):
    r4 = ring(4)
    found = minimum_weight_cycle(r4, [0.2] * 4)
    assert found.cycle == cyc(r4, 0, 1, 2, 3) and math.isclose(found.weight, 0.8)
    found = minimum_weight_cycle(cr8, [0.1] * 12)
    assert len(found.cycle) == 3 and math.isclose(found.weight, 0.3)
    tree = make_graph(4, [(0, 1), (1, 2), (1, 3)])
    assert minimum_weight_cycle(tree, [0.5] * 3) is None


def test_rejects_bad_weights(cr8):
    with pytest.raises(ValueError):
        minimum_weight_cycle(cr8, [0.1] * 11 + [-0.1])
    with pytest.raises(ValueError):
        minimum_weight_cycle(cr8, [0.1] * 11 + [float("nan")])


def test_avoiding_examples(cr8):
    r4 = ring(4)
    assert minimum_weight_cycle_avoiding(r4, [0.2] * 4, [cyc(r4, 0, 1, 2, 3)]) is None
    w = [0.1] * 12
    for method in ("lazy", "copies"):
        found = minimum_weight_cycle_avoiding(cr8, w, [cyc(cr8, 0, 1, 2)], method=method)
        assert len(found.cycle) == 3 and found.cycle != cyc(cr8, 0, 1, 2)
        assert math.isclose(found.weight, 0.3)
    assert minimum_weight_cycle_avoiding(cr8, w, []) == minimum_weight_cycle(cr8, w)


def test_avoiding_rejects_foreign_cycle(cr8):
    other = make_graph(8, [(0, 1), (1, 3), (0, 3)])
    with pytest.raises(ValueError):
        minimum_weight_cycle_avoiding(cr8, [0.1] * 12, [cyc(other, 0, 1, 3)])


def test_price_examples(cr8):
    r4 = ring(4)
    assert price(r4, [0.2] * 4) == cyc(r4, 0, 1, 2, 3)
    assert price(r4, [0.3] * 4) is None
    c = price(cr8, [0.0] * 12)
    assert c is not None and cycle_weight(c, [0.0] * 12) == 0.0
    with pytest.raises(ValueError):
        price(r4, [0.2] * 4, eps=0.0)


def test_budget_signal(cr8):
    forbidden = [c for c in enumerate_cycles(cr8)]
    with pytest.raises(PricingBudgetExceeded):
        minimum_weight_cycle_avoiding(cr8, [0.1] * 12, forbidden, method="copies", budget=10)
    with pytest.raises(PricingBudgetExceeded):
        minimum_weight_cycle_avoiding(cr8, [0.1] * 12, forbidden, method="lazy", budget=3)


weights = st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=40, max_size=40)


@given(st.integers(0, 10_000), weights)
def test_matches_enumeration(seed, wl):
    g = small_eulerian(seed, 4, 9, 14)
    w = wl[:g.m]
    found = minimum_weight_cycle(g, w)
    assert abs(found.weight - brute_min(g, w)) <= 1e-9
    assert abs(found.weight - cycle_weight(found.cycle, w)) <= 1e-9


@given(st.integers(0, 10_000), weights, st.data())
def test_avoiding_matches_enumeration(seed, wl, data):
    g = small_eulerian(seed, 4, 9, 14)
    w = wl[:g.m]
    cycles = enumerate_cycles(g)
    k = data.draw(st.integers(0, min(3, len(cycles))))
    forbidden = data.draw(st.lists(st.sampled_from(cycles), min_size=k, max_size=k, unique=True))
    blocked = data.draw(st.sets(st.integers(0, g.m - 1), max_size=2))
    expect = brute_min(g, w, forbidden, blocked)
    bad = {c.vertices for c in forbidden}
    for method in ("lazy", "copies"):
        found = minimum_weight_cycle_avoiding(g, w, forbidden, blocked, method=method)
        if expect is None:
            assert found is None
        else:
            assert abs(found.weight - expect) <= 1e-9
            assert found.cycle.vertices not in bad
            assert not (found.cycle.edge_indices & blocked)


@given(st.integers(0, 10_000), weights, st.data())
def test_monotone_in_single_weight(seed, wl, data):
    g = small_eulerian(seed, 4, 9, 14)
    w = wl[:g.m]
    e = data.draw(st.integers(0, g.m - 1))
    bump = data.draw(st.floats(0.0, 2.0))
    before = minimum_weight_cycle(g, w).weight
    w2 = list(w)
    w2[e] += bump
    assert minimum_weight_cycle(g, w2).weight >= before - 1e-12


@given(st.integers(0, 10_000), weights)
def test_price_threshold(seed, wl):
    g = small_eulerian(seed, 4, 9, 14)
    w = [x * 0.6 for x in wl[:g.m]]
    best = brute_min(g, w)
    c = price(g, w)
    assert (c is None) == (best >= 1 - 1e-6)


def test_deterministic_tie_break(cr8):
    w = np.full(12, 0.1)
    a = minimum_weight_cycle(cr8, w)
    b = minimum_weight_cycle(cr8, list(w))
    assert a == b and a.cycle == cyc(cr8, 0, 1, 2)
