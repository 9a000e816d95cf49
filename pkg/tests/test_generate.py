import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxecd.generate import (GenSpec, GenerationError, connect_components, edge_count, generate_batch,
                             generate_instance, hakimi_construct, instance_filename, is_graphical,
                             merge_pair, random_even_sequence)
from maxecd.graph import components, is_eulerian_instance, make_graph, write_instance
from maxecd.oracle import enumerate_cycles

from conftest import complete, ring


def rng(seed=0):
    return np.random.default_rng(seed)


def test_even_sequence_examples():
    assert random_even_sequence(3, 3, rng()) == [2, 2, 2]
    for s in range(20):
        seq = random_even_sequence(4, 6, rng(s))
        assert sum(seq) == 12 and all(x >= 2 and x % 2 == 0 for x in seq)
    with pytest.raises(GenerationError):
        random_even_sequence(5, 4, rng())


def test_even_sequence_mean():
    r = rng(123)
    samples = np.array([random_even_sequence(10, 30, r) for _ in range(200)])
    means = samples.mean(axis=0)
    assert np.all(np.abs(means - 6.0) <= 1.0), means


def test_hakimi_examples():
    assert hakimi_construct([2, 2, 2], rng()) == make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert hakimi_construct([4] * 5, rng()) == complete(5)
    assert hakimi_construct([6, 2], rng()) is None
    assert not is_graphical([6, 2])
    assert is_graphical([4, 4, 4, 4, 4])


@given(st.lists(st.integers(1, 4), min_size=3, max_size=9), st.integers(0, 1000))
def test_hakimi_matches_sequence(half, seed):
    seq = [2 * h for h in half]
    g = hakimi_construct(seq, rng(seed))
    assert (g is None) == (not is_graphical(seq))
    if g is not None:
        assert g.degrees() == seq


def test_merge_pair_example():
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    merged = make_graph(6, merge_pair(edges, 0, 3))
    assert merged == make_graph(6, _ring_edges([0, 2, 1, 4, 5, 3]))
    assert merged.degrees() == [2] * 6
    assert len(components(merged)) == 1


def _ring_edges(order):
    return [tuple(sorted((order[i], order[(i + 1) % len(order)]))) for i in range(len(order))]


def test_connect_components_examples():
    g = ring(5)
    assert connect_components(g, rng()) == g
    tri3 = make_graph(9, [(a + o, b + o) for o in (0, 3, 6) for a, b in [(0, 1), (1, 2), (0, 2)]])
    h = connect_components(tri3, rng(4))
    assert h.m == 9 and h.degrees() == [2] * 9 and len(components(h)) == 1


@given(st.lists(st.sampled_from([3, 4, 5]), min_size=2, max_size=5), st.integers(0, 1000))
def test_connect_components_preserves_degrees(sizes, seed):
    pairs, off = [], 0
    for s in sizes:
        pairs += [(off + i, off + (i + 1) % s) for i in range(s)]
        off += s
    g = make_graph(off, pairs)
    h = connect_components(g, rng(seed))
    assert h.degrees() == g.degrees()
    assert is_eulerian_instance(h)


def test_generate_examples():
    g = generate_instance(GenSpec(10, 0.5, seed=0))
    assert g.m == 22 and is_eulerian_instance(g)
    g = generate_instance(GenSpec(6, 0.4, seed=1))
    assert g.m == 6 and g.degrees() == [2] * 6
    assert len(enumerate_cycles(g)) == 1
    with pytest.raises(GenerationError):
        generate_instance(GenSpec(10, 0.1))


def test_edge_count_exact():
    assert edge_count(10, 0.1) == 4
    assert edge_count(30, 0.2) == 87
    assert edge_count(10, 0.3) == 13  # 0.3 * 45 = 13.5
    assert edge_count(100, 0.1) == 495


@given(st.sampled_from([(10, 0.3), (12, 0.5), (20, 0.2), (15, 0.2)]), st.integers(0, 50), st.integers(0, 5))
def test_generated_instances_are_eulerian(cell, seed, index):
    n, dens = cell
    spec = GenSpec(n, dens, seed)
    g = generate_instance(spec, index)
    assert g.n == n and g.m == spec.m
    assert is_eulerian_instance(g)


def test_generation_is_deterministic_and_order_free():
    spec = GenSpec(20, 0.3, seed=7, count=4)
    batch = generate_batch(spec)
    again = [generate_instance(spec, i) for i in reversed(range(4))][::-1]
    assert [write_instance(g) for g in batch] == [write_instance(g) for g in again]
    assert write_instance(batch[0]) != write_instance(batch[1])
    other = generate_instance(GenSpec(20, 0.3, seed=8), 0)
    assert write_instance(other) != write_instance(batch[0])


def test_instance_filename():
    assert instance_filename(30, 0.2, 5) == "n30_d0.2_i5.txt"
