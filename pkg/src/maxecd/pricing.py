"""Minimum-weight cycle search used as the column-generation pricer.

Weights are the per-edge dual values of the master LP. Edges that must
not be used are passed as a ``blocked`` index set instead of an infinite
weight, so all arithmetic stays finite.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Cycle, Graph, GraphError, make_cycle

DEFAULT_EPS = 1e-6
COPY_BUDGET = 10**6


class PricingBudgetExceeded(RuntimeError):
    """Too many blocked-edge combinations were needed to avoid forbidden cycles."""


@dataclass(frozen=True)
class PricedCycle:
    cycle: Cycle
    weight: float


def cycle_weight(c: Cycle, w: Sequence[float]) -> float:
    return math.fsum(w[e] for e in c.edge_indices)


def _check_weights(g: Graph, w: Sequence[float]) -> None:
    if len(w) != g.m:
        raise ValueError(f"expected {g.m} weights, got {len(w)}")
    for e, x in enumerate(w):
        if not x >= 0:
            raise ValueError(f"weight of edge {e} is negative or NaN: {x}")


def _shortest_path(g: Graph, w: Sequence[float], src: int, dst: int, skip: int,
                   blocked, limit: float):
    """Label-setting search ``src -> dst`` that never uses edge ``skip`` or a
    blocked edge. Labels order by (weight, edge count, vertex sequence).
    Returns ``(dist, path)`` or None when nothing lighter than ``limit`` exists.
    """
    heap = [(0.0, 0, (src,))]
    done = set()
    adj = g.adjacency
    while heap:
        d, h, path = heapq.heappop(heap)
        if d >= limit:
            return None
        u = path[-1]
        if u in done:
            continue
        if u == dst:
            return d, path
        done.add(u)
        for x, e in adj[u]:
            if x in done or e == skip or e in blocked:
                continue
            heapq.heappush(heap, (d + w[e], h + 1, path + (x,)))
    return None


def _minimum_cycle(g: Graph, w: Sequence[float], blocked=frozenset()) -> PricedCycle | None:
    best_w = math.inf
    best_path = None
    for e, (u, v) in enumerate(g.edges):
        if e in blocked or w[e] >= best_w:
            continue
        found = _shortest_path(g, w, u, v, e, blocked, best_w - w[e])
        if found is None:
            continue
        d, path = found
        total = d + w[e]
        if total < best_w:
            best_w = total
            best_path = path
    if best_path is None:
        return None
    c = make_cycle(g, best_path)
    return PricedCycle(c, cycle_weight(c, w))


def minimum_weight_cycle(g: Graph, w: Sequence[float], blocked: Iterable[int] = ()) -> PricedCycle | None:
    """Lightest simple cycle of ``g`` under nonnegative weights ``w``.

    For every usable edge ``(u, v)`` the lightest ``u``-``v`` path avoiding
    that edge closes a candidate cycle; the lightest candidate wins, ties
    going to the lower edge index. Returns None if no cycle avoids
    ``blocked``.
    """
    _check_weights(g, w)
    return _minimum_cycle(g, w, frozenset(blocked))


def _check_forbidden(g: Graph, forbidden: Sequence[Cycle]) -> list[Cycle]:
    out = []
    for c in forbidden:
        fresh = make_cycle(g, c.vertices)
        if fresh.edge_indices != c.edge_indices:
            raise GraphError(f"forbidden cycle {c.vertices} does not match the graph")
        out.append(fresh)
    return out


def _avoid_copies(g, w, forbidden, blocked, budget):
    """Enumerate every choice of one blocked edge per forbidden cycle."""
    best = None
    seen = set()
    edge_lists = [c.edge_list(g) for c in forbidden]
    for choice in itertools.product(*edge_lists):
        key = frozenset(choice)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > budget:
            raise PricingBudgetExceeded(f"more than {budget} pricing copies")
        found = _minimum_cycle(g, w, blocked | key)
        if found is not None and (best is None or found.weight < best.weight):
            best = found
    return best


def _avoid_lazy(g, w, forbidden, blocked, budget):
    """Branch only on forbidden cycles that actually come out as minima.

    A cycle other than ``C`` misses at least one edge of ``C``, so blocking
    each edge of ``C`` in turn covers every remaining candidate. Blocking
    more edges never lowers the minimum, which bounds the search.
    """
    bad = {c.vertices for c in forbidden}
    best = None
    calls = 0
    seen = set()
    stack = [blocked]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        calls += 1
        if calls > budget:
            raise PricingBudgetExceeded(f"more than {budget} pricing copies")
        found = _minimum_cycle(g, w, cur)
        if found is None or (best is not None and found.weight >= best.weight):
            continue
        if found.cycle.vertices not in bad:
            best = found
            continue
        for e in reversed(found.cycle.edge_list(g)):
            stack.append(cur | {e})
    return best


def minimum_weight_cycle_avoiding(g: Graph, w: Sequence[float], forbidden: Sequence[Cycle],
                                  blocked: Iterable[int] = (), method: str = "lazy",
                                  budget: int = COPY_BUDGET) -> PricedCycle | None:
    """Lightest cycle of ``g`` that is not (canonically) in ``forbidden``.

    ``method="copies"`` evaluates one weighted copy per combination of a
    blocked edge from each forbidden cycle. ``method="lazy"`` reaches the
    same minimum weight by only expanding forbidden cycles that turn up as
    minima. Both raise :class:`PricingBudgetExceeded` past ``budget``
    shortest-cycle evaluations.
    """
    _check_weights(g, w)
    blocked = frozenset(blocked)
    forbidden = _check_forbidden(g, forbidden)
    # a forbidden cycle through a blocked edge is already excluded
    forbidden = [c for c in forbidden if not (c.edge_indices & blocked)]
    if not forbidden:
        return _minimum_cycle(g, w, blocked)
    if method == "copies":
        return _avoid_copies(g, w, forbidden, blocked, budget)
    if method == "lazy":
        return _avoid_lazy(g, w, forbidden, blocked, budget)
    raise ValueError(f"unknown method {method!r}")


def price(g: Graph, w: Sequence[float], forbidden: Sequence[Cycle] = (), eps: float = DEFAULT_EPS,
          blocked: Iterable[int] = (), method: str = "lazy", budget: int = COPY_BUDGET) -> Cycle | None:
    """A cycle violating its dual constraint (weight < 1 - eps), or None.

    Forbidden cycles that are heavy enough to never qualify are dropped
    before the search, which keeps the number of copies small.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    _check_weights(g, w)
    threshold = 1.0 - eps
    light = [c for c in forbidden if cycle_weight(c, w) < threshold]
    found = minimum_weight_cycle_avoiding(g, w, light, blocked, method, budget)
    if found is None or found.weight >= threshold:
        return None
    return found.cycle
