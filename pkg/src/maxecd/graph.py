"""Simple undirected graphs, cycles and cycle decompositions.

Edges are identified by a stable integer index so that weight vectors,
dual values and coverage sets line up across the whole package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, cycles or instance files."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is sorted lexicographically with ``u < v`` for every pair;
    the position of a pair in that tuple is its edge index.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, compare=False)
    _index: dict = field(repr=False, compare=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edge_index(self, u: int, v: int) -> int:
        """Index of edge ``{u, v}``; raises ``KeyError`` if absent."""
        if u > v:
            u, v = v, u
        return self._index[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._index

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]


def make_graph(n: int, edge_pairs: Iterable[Sequence[int]]) -> Graph:
    """Build the canonical graph for ``edge_pairs``.

    Pairs are normalized to ``u < v``, sorted, and indexed in that order.
    Self-loops, duplicates and out-of-range labels raise ``GraphError``.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[tuple[int, int]] = set()
    for pair in edge_pairs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(key)
    edges = tuple(sorted(seen))
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    for lst in adj:
        lst.sort()
    index = {e: i for i, e in enumerate(edges)}
    return Graph(n, edges, tuple(tuple(a) for a in adj), index)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, _ in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def is_eulerian_instance(g: Graph) -> bool:
    """True iff ``g`` is connected and every degree is even and positive.

    An isolated vertex counts as a connectivity violation.
    """
    if g.n == 0 or g.m == 0:
        return False
    if any(d == 0 or d % 2 for d in g.degrees()):
        return False
    return is_connected(g)


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


def canonical_vertices(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the smallest label leads, then orient towards its smaller neighbor."""
    vs = list(vertices)
    k = len(vs)
    i = vs.index(min(vs))
    rot = vs[i:] + vs[:i]
    if k > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


@dataclass(frozen=True, order=True)
class Cycle:
    """Simple cycle given by its canonical vertex sequence.

    Construct through :func:`make_cycle` so the edge indices are checked
    against a host graph.
    """

    vertices: tuple[int, ...]
    edge_indices: frozenset[int] = field(compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_list(self, g: Graph) -> list[int]:
        """Edge indices in traversal order, starting with ``(v1, v2)``."""
        vs = self.vertices
        return [g.edge_index(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def make_cycle(g: Graph, vertices: Sequence[int]) -> Cycle:
    """Validate ``vertices`` as a simple cycle of ``g`` and canonicalize it."""
    vs = [int(v) for v in vertices]
    if len(vs) < 3:
        raise GraphError(f"cycle {tuple(vs)} has fewer than 3 vertices")
    if len(set(vs)) != len(vs):
        raise GraphError(f"cycle {tuple(vs)} repeats a vertex")
    idx = []
    for i, u in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        if not (0 <= u < g.n and 0 <= w < g.n) or not g.has_edge(u, w):
            raise GraphError(f"cycle {tuple(vs)} uses missing edge ({u}, {w})")
        idx.append(g.edge_index(u, w))
    return Cycle(canonical_vertices(vs), frozenset(idx))


def cycle_from_edges(g: Graph, edge_ids: Iterable[int]) -> Cycle:
    """Recover the cycle whose edge set is ``edge_ids``."""
    ids = list(edge_ids)
    nbrs: dict[int, list[int]] = {}
    for e in ids:
        u, v = g.edges[e]
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nbrs.values()):
        raise GraphError("edge set is not a cycle")
    start = min(nbrs)
    order = [start]
    prev, cur = None, start
    while True:
        a, b = nbrs[cur]
        nxt = a if a != prev else b
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != len(ids):
        raise GraphError("edge set is not a single cycle")
    return make_cycle(g, order)


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Collection of cycles; equality ignores order."""

    cycles: tuple[Cycle, ...]

    def __init__(self, cycles: Iterable[Cycle] = ()):
        object.__setattr__(self, "cycles", tuple(sorted(cycles, key=lambda c: c.vertices)))

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    @property
    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for c in self.cycles:
            out |= c.edge_indices
        return frozenset(out)

    def to_lists(self) -> list[list[int]]:
        return [list(c.vertices) for c in self.cycles]


def check_decomposition(g: Graph, d: Decomposition, require_complete: bool = True) -> list[dict]:
    """Return the list of violations; empty means valid."""
    violations = []
    owner: dict[int, int] = {}
    for k, c in enumerate(d.cycles):
        try:
            fresh = make_cycle(g, c.vertices)
        except GraphError as exc:
            violations.append({"kind": "invalid_cycle", "cycle": k, "detail": str(exc)})
            continue
        if fresh.edge_indices != c.edge_indices:
            violations.append({"kind": "edge_mismatch", "cycle": k})
        for e in fresh.edge_indices:
            if e in owner:
                violations.append({"kind": "shared_edge", "edge": e, "cycles": [owner[e], k]})
            else:
                owner[e] = k
    if require_complete:
        missing = sorted(set(range(g.m)) - owner.keys())
        if missing:
            violations.append({"kind": "uncovered", "edges": missing})
    return violations


def validate_decomposition(g: Graph, d: Decomposition, require_complete: bool = True) -> bool:
    return not check_decomposition(g, d, require_complete)


def remove_cycle_edges(g: Graph, c: Cycle) -> tuple[Graph, list[int]]:
    """Drop the edges of ``c`` from ``g``.

    Returns the new graph and ``old_index``, where ``old_index[i]`` is the
    index in ``g`` of edge ``i`` of the new graph.
    """
    for e in c.edge_indices:
        if not 0 <= e < g.m:
            raise GraphError(f"cycle edge {e} not in graph")
    for i, u in enumerate(c.vertices):
        w = c.vertices[(i + 1) % len(c)]
        if not g.has_edge(u, w) or g.edge_index(u, w) not in c.edge_indices:
            raise GraphError(f"cycle edge ({u}, {w}) not in graph")
    keep = [i for i in range(g.m) if i not in c.edge_indices]
    return make_graph(g.n, [g.edges[i] for i in keep]), keep


def subgraph_without(g: Graph, drop: Iterable[int]) -> tuple[Graph, list[int]]:
    """Graph on the same vertices minus the given edge indices, plus index map."""
    gone = set(drop)
    keep = [i for i in range(g.m) if i not in gone]
    return make_graph(g.n, [g.edges[i] for i in keep]), keep


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------


def write_instance(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_instance(text: str, require_eulerian: bool = False) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphError("empty instance")
    try:
        n, m = (int(x) for x in rows[0])
    except ValueError:
        raise GraphError(f"malformed header {' '.join(rows[0])!r}") from None
    if len(rows) - 1 != m:
        raise GraphError(f"header declares {m} edges, found {len(rows) - 1}")
    pairs = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            pairs.append((int(row[0]), int(row[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer label") from None
    g = make_graph(n, pairs)
    if require_eulerian and not is_eulerian_instance(g):
        raise GraphError("instance is not a connected even-degree graph")
    return g


def load_instance(path, require_eulerian: bool = False) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return read_instance(fh.read(), require_eulerian)


def save_instance(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_instance(g))


def chorded_ring_graph() -> Graph:
    """8-ring plus the chords (0,2), (2,4), (4,6), (0,6); 12 edges, optimum 4."""
    ring = [(i, (i + 1) % 8) for i in range(8)]
    chords = [(0, 6), (0, 2), (4, 6), (2, 4)]
    return make_graph(8, ring + chords)
