"""Exhaustive ground truth for small graphs (tests and debugging only)."""

from __future__ import annotations

from functools import lru_cache

from .graph import Cycle, Decomposition, Graph, GraphError, is_eulerian_instance, make_cycle

MAX_EDGES = 16


def _guard(g: Graph, limit: int) -> None:
    if g.m > limit:
        raise GraphError(f"oracle limited to {limit} edges, graph has {g.m}")


def enumerate_cycles(g: Graph, max_edges: int = MAX_EDGES) -> list[Cycle]:
    """Every simple cycle once, sorted by (length, vertex sequence).

    Paths grow from their smallest vertex ``s`` through labels above ``s``;
    a closed path is kept in one direction only.
    """
    _guard(g, max_edges)
    found = []
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(u):
            for w, _ in g.adjacency[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    found.append(make_cycle(g, path))
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    found.sort(key=lambda c: (len(c), c.vertices))
    return found


def max_decomposition_bruteforce(g: Graph, max_edges: int = MAX_EDGES) -> tuple[int, Decomposition]:
    """Maximum cycle decomposition by exact cover over edge bitmasks.

    Always branches on the lowest uncovered edge; only cycles through that
    edge can cover it, so no decomposition is missed.
    """
    _guard(g, max_edges)
    if not is_eulerian_instance(g):
        raise GraphError("oracle needs a connected even-degree graph")
    cycles = enumerate_cycles(g, max_edges)
    masks = [sum(1 << e for e in c.edge_indices) for c in cycles]
    through = [[k for k, mk in enumerate(masks) if mk >> e & 1] for e in range(g.m)]

    @lru_cache(maxsize=None)
    def best(uncovered: int):
        if uncovered == 0:
            return 0, ()
        e = (uncovered & -uncovered).bit_length() - 1
        top = (-1, ())
        for k in through[e]:
            mk = masks[k]
            if mk & uncovered != mk:
                continue
            cnt, picks = best(uncovered & ~mk)
            if cnt >= 0 and cnt + 1 > top[0]:
                top = (cnt + 1, (k,) + picks)
        return top

    count, picks = best((1 << g.m) - 1)
    best.cache_clear()
    return count, Decomposition(cycles[k] for k in picks)
