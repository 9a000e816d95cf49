import pytest
from hypothesis import given, strategies as st

from maxecd.graph import (Decomposition, GraphError, canonical_vertices, check_decomposition,
                          cycle_from_edges, is_eulerian_instance, make_cycle, make_graph, read_instance,
                          remove_cycle_edges, validate_decomposition, write_instance)

from conftest import complete, cyc, ring, small_eulerian

TWO_CYCLES = [(0, 2, 4, 6), (0, 1, 2, 3, 4, 5, 6, 7)]
FOUR_TRIANGLES = [(0, 1, 2), (2, 3, 4), (4, 5, 6), (6, 7, 0)]


def test_make_graph_triangle(triangle):
    assert triangle.m == 3
    assert triangle.edges == ((0, 1), (0, 2), (1, 2))


def test_make_graph_chorded_ring_degrees(cr8):
    assert cr8.m == 12
    assert cr8.degrees() == [4, 2, 4, 2, 4, 2, 4, 2]


def test_make_graph_normalizes_and_sorts():
    g = make_graph(4, [(3, 2), (1, 0), (2, 0)])
    assert g.edges == ((0, 1), (0, 2), (2, 3))
    assert g.edge_index(3, 2) == 2


@pytest.mark.parametrize("n,pairs", [(2, [(0, 0)]), (3, [(0, 1), (1, 0)]), (2, [(0, 2)]), (2, [(-1, 0)])])
def test_make_graph_rejects(n, pairs):
    with pytest.raises(GraphError):
        make_graph(n, pairs)


def test_is_eulerian(cr8, triangle):
    assert is_eulerian_instance(cr8)
    assert is_eulerian_instance(triangle)
    assert not is_eulerian_instance(make_graph(3, [(0, 1), (1, 2)]))
    # isolated vertex or two components
    assert not is_eulerian_instance(make_graph(4, [(0, 1), (1, 2), (0, 2)]))
    assert not is_eulerian_instance(make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
    assert not is_eulerian_instance(make_graph(2, []))


def test_validate_chorded_ring_examples(cr8):
    assert validate_decomposition(cr8, Decomposition(cyc(cr8, *c) for c in TWO_CYCLES))
    assert validate_decomposition(cr8, Decomposition(cyc(cr8, *c) for c in FOUR_TRIANGLES))
    partial = Decomposition([cyc(cr8, 0, 2, 4, 6)])
    assert not validate_decomposition(cr8, partial, require_complete=True)
    assert validate_decomposition(cr8, partial, require_complete=False)
    problems = check_decomposition(cr8, partial)
    assert problems == [{"kind": "uncovered", "edges": sorted(set(range(12)) - partial.covered)}]
    assert len(problems[0]["edges"]) == 8


def test_validate_detects_overlap(cr8):
    d = Decomposition([cyc(cr8, 0, 1, 2), cyc(cr8, 0, 1, 2, 3, 4, 5, 6, 7)])
    kinds = {p["kind"] for p in check_decomposition(cr8, d, require_complete=False)}
    assert "shared_edge" in kinds


def test_make_cycle_rejects(cr8):
    for bad in [(0, 1), (0, 1, 3), (0, 1, 2, 1)]:
        with pytest.raises(GraphError):
            make_cycle(cr8, bad)


def test_canonical_form(cr8):
    assert cyc(cr8, 2, 1, 0).vertices == (0, 1, 2)
    assert cyc(cr8, 4, 6, 0, 2).vertices == (0, 2, 4, 6)
    assert cyc(cr8, 6, 4, 2, 0) == cyc(cr8, 0, 2, 4, 6)


@given(st.permutations(list(range(7))), st.integers(0, 6), st.booleans())
def test_canonical_idempotent_and_rotation_invariant(perm, shift, flip):
    base = canonical_vertices(perm)
    assert canonical_vertices(base) == base
    moved = list(perm[shift:]) + list(perm[:shift])
    if flip:
        moved.reverse()
    assert canonical_vertices(moved) == base


def test_cycle_from_edges(cr8):
    c = cyc(cr8, 0, 2, 4, 6)
    assert cycle_from_edges(cr8, c.edge_indices) == c


def test_remove_cycle_edges_examples(cr8, triangle):
    g, keep = remove_cycle_edges(triangle, cyc(triangle, 0, 1, 2))
    assert g.n == 3 and g.m == 0 and keep == []
    g, keep = remove_cycle_edges(cr8, cyc(cr8, 0, 2, 4, 6))
    assert g == ring(8)
    assert [cr8.edges[i] for i in keep] == list(g.edges)
    g, _ = remove_cycle_edges(cr8, cyc(cr8, 0, 1, 2))
    assert g.m == 9 and all(d % 2 == 0 for d in g.degrees())


def test_remove_cycle_edges_rejects_foreign_cycle(cr8):
    k4 = complete(4)
    with pytest.raises(GraphError):
        remove_cycle_edges(cr8, cyc(k4, 1, 2, 3))


def test_instance_round_trip(cr8, triangle):
    assert write_instance(triangle) == "3 3\n0 1\n0 2\n1 2\n"
    assert read_instance(write_instance(triangle)) == triangle
    assert read_instance(write_instance(cr8)) == cr8


@pytest.mark.parametrize("text", ["2 1\n0 0\n", "3 2\n0 1\n", "x y\n", "3 1\n0 5\n", "3 1\n0 1 2\n", ""])
def test_read_instance_errors(text):
    with pytest.raises(GraphError):
        read_instance(text)


def test_read_instance_eulerian_flag():
    with pytest.raises(GraphError):
        read_instance("3 2\n0 1\n1 2\n", require_eulerian=True)


@given(st.integers(0, 10_000))
def test_graph_invariants(seed):
    g = small_eulerian(seed, 4, 10, 20)
    assert sum(g.degrees()) == 2 * g.m
    for v in range(g.n):
        assert len(g.adjacency[v]) == g.degree(v)
        for w, e in g.adjacency[v]:
            assert set(g.edges[e]) == {v, w}
    assert read_instance(write_instance(g)) == g


@given(st.integers(0, 10_000), st.data())
def test_remove_cycle_preserves_parity(seed, data):
    from maxecd.oracle import enumerate_cycles
    g = small_eulerian(seed, 4, 8, 14)
    cycles = enumerate_cycles(g)
    c = data.draw(st.sampled_from(cycles))
    h, _ = remove_cycle_edges(g, c)
    assert h.m == g.m - len(c)
    assert all(d % 2 == 0 for d in h.degrees())
