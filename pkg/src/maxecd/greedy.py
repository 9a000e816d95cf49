"""GREEDY heuristic: peel shortest BFS fundamental cycles from random vertices."""

from __future__ import annotations

from collections import deque

import numpy as np

from .graph import Cycle, Decomposition, Graph, GraphError, canonical_vertices, make_cycle


def _adjacency(g: Graph) -> list[dict[int, int]]:
    return [dict(a) for a in g.adjacency]


def _min_fundamental(adj: list[dict[int, int]], root: int) -> tuple[list[int], list[int]]:
    """Shortest fundamental cycle of the BFS tree of ``adj`` rooted at ``root``.

    Returns ``(vertex_sequence, edge_indices)``. Neighbors are visited in
    ascending label order; equal lengths are resolved by the smaller
    non-tree edge index.
    """
    parent = {root: -1}
    parent_edge = {root: -1}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                parent_edge[w] = adj[u][w]
                depth[w] = depth[u] + 1
                order.append(w)
                queue.append(w)

    best = None
    for u in order:
        du = depth[u]
        for w, e in adj[u].items():
            if w < u or e == parent_edge[u] or e == parent_edge[w]:
                continue
            # lowest common ancestor by walking up
            a, b = u, w
            da, db = du, depth[w]
            while da > db:
                a = parent[a]
                da -= 1
            while db > da:
                b = parent[b]
                db -= 1
            while a != b:
                a, b = parent[a], parent[b]
                da -= 1
            length = du + depth[w] - 2 * da + 1
            key = (length, e)
            if best is None or key < best[0]:
                best = (key, u, w, a)
    if best is None:
        raise GraphError(f"no cycle reachable from vertex {root}")
    _, u, w, lca = best
    left = [u]
    while left[-1] != lca:
        left.append(parent[left[-1]])
    right = [w]
    while right[-1] != lca:
        right.append(parent[right[-1]])
    # u -> ... -> lca -> ... -> w, then the non-tree edge closes (w, u)
    verts = left + right[-2::-1]
    edges = [adj[verts[i]][verts[(i + 1) % len(verts)]] for i in range(len(verts))]
    return verts, edges


def min_fundamental_cycle(g: Graph, root: int) -> Cycle:
    """Shortest fundamental cycle of the BFS tree of ``g`` rooted at ``root``.

    The cycle need not pass through ``root``.
    """
    if g.degree(root) == 0:
        raise GraphError(f"vertex {root} has no incident edge")
    verts, _ = _min_fundamental(_adjacency(g), root)
    return make_cycle(g, verts)


def greedy_decomposition(g: Graph, rng: np.random.Generator) -> Decomposition:
    """Complete cycle decomposition of an even-degree graph.

    Each round draws a vertex uniformly among those with remaining edges,
    removes the shortest fundamental cycle of its BFS tree, and repeats
    until the graph is empty.
    """
    if any(d % 2 for d in g.degrees()):
        raise GraphError("greedy decomposition needs all degrees even")
    adj = _adjacency(g)
    live = sorted(v for v in range(g.n) if adj[v])
    cycles = []
    while live:
        root = live[int(rng.integers(len(live)))]
        verts, edges = _min_fundamental(adj, root)
        for i, u in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            del adj[u][w]
            del adj[w][u]
        cycles.append(Cycle(canonical_vertices(verts), frozenset(edges)))
        live = [v for v in live if adj[v]]
    return Decomposition(cycles)


def greedy_runs(g: Graph, runs: int, rng: np.random.Generator) -> list[Decomposition]:
    return [greedy_decomposition(g, rng) for _ in range(runs)]


def fundamental_cycles(g: Graph, root: int) -> list[Cycle]:
    """All fundamental cycles of the BFS tree rooted at ``root``."""
    parent = {root: -1}
    parent_edge = {root: -1}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w, e in g.adjacency[u]:
            if w not in parent:
                parent[w] = u
                parent_edge[w] = e
                queue.append(w)
    out = []
    for e, (u, w) in enumerate(g.edges):
        if u not in parent or e == parent_edge[u] or e == parent_edge[w]:
            continue
        up = [u]
        while up[-1] != -1:
            up.append(parent[up[-1]])
        anc = {v: i for i, v in enumerate(up[:-1])}
        down = [w]
        while down[-1] not in anc:
            down.append(parent[down[-1]])
        lca = down[-1]
        verts = up[:anc[lca] + 1] + down[-2::-1]
        out.append(make_cycle(g, verts))
    return out


def all_fundamental_cycles(g: Graph) -> list[Cycle]:
    """Union of fundamental cycles over BFS trees from every vertex."""
    seen = {}
    for r in range(g.n):
        if g.degree(r):
            for c in fundamental_cycles(g, r):
                seen.setdefault(c.vertices, c)
    return [seen[k] for k in sorted(seen)]


def all_triangles(g: Graph) -> list[Cycle]:
    out = []
    for a, b in g.edges:
        for c, _ in g.adjacency[b]:
            if c > b and g.has_edge(a, c):
                out.append(make_cycle(g, (a, b, c)))
    return out
