"""Random connected even-degree graphs.

Pipeline: random even degree sequence, Havel-Hakimi realization on a
random labelling, degree-preserving double-edge swaps, then component
merging until the graph is connected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, components, make_graph

log = logging.getLogger(__name__)

RETRY_BUDGET = 100
SWAPS_PER_EDGE = 4


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n: int
    m_fraction: float
    seed: int = 0
    count: int = 20

    @property
    def m(self) -> int:
        return edge_count(self.n, self.m_fraction)


def edge_count(n: int, m_fraction) -> int:
    """``floor(m_fraction * n * (n - 1) / 2)`` computed exactly."""
    frac = Fraction(str(m_fraction))
    return int(frac * n * (n - 1) // 2)


def instance_rng(seed: int, n: int, m: int, index: int) -> np.random.Generator:
    """Independent stream per (seed, cell, instance) so batches are order-free."""
    return np.random.default_rng(np.random.SeedSequence([seed, n, m, index]))


def random_even_sequence(n: int, m: int, rng: np.random.Generator) -> list[int]:
    """Start from all 2s and add 2 to a uniform random entry ``m - n`` times."""
    if n < 1:
        raise GenerationError("need at least one vertex")
    if m < n:
        raise GenerationError(f"m={m} < n={n}: every vertex needs degree >= 2")
    seq = [2] * n
    for i in rng.integers(0, n, size=m - n):
        seq[i] += 2
    return seq


def is_graphical(seq) -> bool:
    """Erdos-Gallai test."""
    d = sorted(seq, reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        rest = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + rest:
            return False
    return True


def havel_hakimi(seq) -> list[tuple[int, int]] | None:
    """Realize ``seq`` (vertex ``i`` gets degree ``seq[i]``) or return None.

    Highest remaining degree first; ties by smaller label.
    """
    n = len(seq)
    rem = list(seq)
    edges = []
    for _ in range(n):
        order = sorted(range(n), key=lambda v: (-rem[v], v))
        v = order[0]
        d = rem[v]
        if d == 0:
            break
        targets = order[1:d + 1]
        if len(targets) < d or rem[targets[-1]] == 0:
            return None
        rem[v] = 0
        for w in targets:
            rem[w] -= 1
            edges.append((v, w))
    if any(rem):
        return None
    return edges


def double_edge_swaps(edges: list[tuple[int, int]], swaps: int, rng: np.random.Generator,
                      max_tries: int | None = None) -> list[tuple[int, int]]:
    """Degree-preserving rewiring ``(a,b),(c,d) -> (a,c),(b,d)``, rejecting
    self-loops and duplicates."""
    edges = [tuple(sorted(e)) for e in edges]
    present = set(edges)
    m = len(edges)
    if m < 2:
        return edges
    if max_tries is None:
        max_tries = 25 * swaps + 100
    done = tries = 0
    while done < swaps and tries < max_tries:
        tries += 1
        i, j = rng.integers(0, m, size=2)
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        if a == c or b == d or len({a, b, c, d}) < 4:
            continue
        e1 = (min(a, c), max(a, c))
        e2 = (min(b, d), max(b, d))
        if e1 in present or e2 in present:
            continue
        present.difference_update((edges[i], edges[j]))
        present.update((e1, e2))
        edges[i], edges[j] = e1, e2
        done += 1
    return edges


def merge_pair(edges: list[tuple[int, int]], i: int, j: int) -> list[tuple[int, int]]:
    """Replace ``edges[i] = (u, v)`` and ``edges[j] = (x, y)`` by ``(u, x)`` and ``(v, y)``."""
    (u, v), (x, y) = edges[i], edges[j]
    out = list(edges)
    out[i] = (min(u, x), max(u, x))
    out[j] = (min(v, y), max(v, y))
    return out


def connect_components(g: Graph, rng: np.random.Generator) -> Graph:
    """Merge components of an even-degree graph until it is connected.

    Each step picks two components and one random edge in each; because no
    edge of an even-degree graph is a bridge, the rewiring joins exactly
    the two chosen components and leaves every degree unchanged.
    """
    if any(d % 2 for d in g.degrees()):
        raise GenerationError("connect_components needs all degrees even")
    edges = list(g.edges)
    n = g.n
    while True:
        h = make_graph(n, edges)
        comps = components(h)
        if len(comps) <= 1:
            return h
        if any(h.degree(c[0]) == 0 for c in comps):
            raise GenerationError("cannot merge a component without edges")
        a, b = sorted(rng.choice(len(comps), size=2, replace=False))
        side_a, side_b = set(comps[a]), set(comps[b])
        ea = [k for k, (u, _) in enumerate(edges) if u in side_a]
        eb = [k for k, (u, _) in enumerate(edges) if u in side_b]
        i = ea[rng.integers(len(ea))]
        j = eb[rng.integers(len(eb))]
        if rng.random() < 0.5:
            edges[j] = edges[j][::-1]
        edges = merge_pair(edges, i, j)


def hakimi_construct(seq, rng: np.random.Generator, swaps_per_edge: int = SWAPS_PER_EDGE) -> Graph | None:
    """Random simple graph with degree sequence ``seq`` or None if not graphical.

    The greedy realization runs on a uniformly permuted labelling and is
    then mixed with ``swaps_per_edge * m`` successful double-edge swaps.
    """
    seq = list(seq)
    n = len(seq)
    if not is_graphical(seq):
        return None
    perm = rng.permutation(n)
    # vertex perm[k] receives seq[perm[k]]; realize on positions then relabel
    shuffled = [seq[p] for p in perm]
    edges = havel_hakimi(shuffled)
    if edges is None:
        return None
    edges = [(int(perm[u]), int(perm[v])) for u, v in edges]
    edges = double_edge_swaps(edges, swaps_per_edge * len(edges), rng)
    return make_graph(n, edges)


def generate_graph(n: int, m: int, rng: np.random.Generator, retries: int = RETRY_BUDGET) -> Graph:
    """Connected even-degree simple graph with exactly ``n`` vertices and ``m`` edges."""
    if m < n:
        raise GenerationError(f"m={m} < n={n}")
    if m > n * (n - 1) // 2:
        raise GenerationError(f"m={m} exceeds the simple-graph maximum for n={n}")
    for attempt in range(retries):
        seq = random_even_sequence(n, m, rng)
        g = hakimi_construct(seq, rng)
        if g is None:
            log.debug("sequence %s not graphical (attempt %d)", seq, attempt)
            continue
        return connect_components(g, rng)
    raise GenerationError(f"no graphical sequence for n={n}, m={m} after {retries} tries")


def generate_instance(spec: GenSpec, index: int = 0) -> Graph:
    m = spec.m
    if m < spec.n:
        raise GenerationError(f"density {spec.m_fraction} gives m={m} < n={spec.n}")
    return generate_graph(spec.n, m, instance_rng(spec.seed, spec.n, m, index))


def generate_batch(spec: GenSpec) -> list[Graph]:
    return [generate_instance(spec, i) for i in range(spec.count)]


def instance_filename(n: int, density, index: int) -> str:
    return f"n{n}_d{density}_i{index}.txt"
