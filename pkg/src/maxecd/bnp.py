"""Set-packing master problem over cycles and its branch-and-bound driver.

Without a pricer the driver solves the integer model restricted to the
columns in the pool. With a :class:`Pricer` attached every node LP is
closed by column generation, which turns it into branch-and-price over
all cycles of the graph.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .graph import Cycle, Decomposition, Graph, GraphError, validate_decomposition
from .pricing import (COPY_BUDGET, DEFAULT_EPS, PricingBudgetExceeded, minimum_weight_cycle,
                      price)
from .simplex import BoundedSimplex

log = logging.getLogger(__name__)

INT_TOL = 1e-6
DEFAULT_TIME_LIMIT = 1800.0


class InfeasibleFixing(ValueError):
    pass


def trivial_upper_bound(g: Graph) -> int:
    """Every cycle uses at least three edges."""
    return g.m // 3


@dataclass
class MasterModel:
    graph: Graph
    pool: list[Cycle] = field(default_factory=list)
    fixed_zero: set[int] = field(default_factory=set)
    fixed_one: set[int] = field(default_factory=set)

    def __post_init__(self):
        uniq = []
        seen = set()
        for c in self.pool:
            if c.vertices not in seen:
                seen.add(c.vertices)
                uniq.append(c)
        self.pool = uniq
        self._where = {c.vertices: i for i, c in enumerate(self.pool)}

    def index_of(self, c: Cycle) -> int | None:
        return self._where.get(c.vertices)

    def add(self, c: Cycle) -> int:
        j = self._where.get(c.vertices)
        if j is None:
            j = len(self.pool)
            self.pool.append(c)
            self._where[c.vertices] = j
        return j

    def blocked_edges(self, fixed_one: Iterable[int] | None = None) -> set[int]:
        """Edges of the fixed-to-one cycles; raises if two of them overlap."""
        out: set[int] = set()
        for j in sorted(self.fixed_one if fixed_one is None else fixed_one):
            es = self.pool[j].edge_indices
            if out & es:
                raise InfeasibleFixing(f"fixed cycles overlap on edges {sorted(out & es)}")
            out |= es
        return out


@dataclass
class LpSolution:
    x: np.ndarray
    y: np.ndarray
    objective: float
    basis: tuple | None = field(default=None, repr=False)


class MasterLP:
    """Persistent LP relaxation of the packing model over a growing pool.

    One row per edge (``sum x_C <= 1``) and one column per pooled cycle.
    Branching decisions are bounds: fixed-to-zero columns get ``x <= 0``,
    fixed-to-one columns ``x = 1``, which forces every column sharing an
    edge with them to zero through the edge rows. The ``x <= 1`` bounds
    of free columns are implied by the edge rows and left out, so the
    edge duals stay feasible for every free pooled column.
    """

    def __init__(self, model: MasterModel):
        self.model = model
        g = model.graph
        self.lp = BoundedSimplex(np.zeros((g.m, 0)), np.ones(g.m), np.zeros(0))
        self.sync()

    def sync(self) -> None:
        pool = self.model.pool
        have = self.lp.n
        if have == len(pool):
            return
        cols = np.zeros((self.model.graph.m, len(pool) - have))
        for k, c in enumerate(pool[have:]):
            cols[list(c.edge_indices), k] = 1.0
        self.lp.add_columns(cols, np.ones(cols.shape[1]))

    def solve(self, fixed_zero=(), fixed_one=(), warm=None) -> LpSolution:
        self.model.blocked_edges(fixed_one)
        if set(fixed_zero) & set(fixed_one):
            raise InfeasibleFixing("a column is fixed to both zero and one")
        self.sync()
        n = self.lp.n
        lo = np.zeros(n)
        hi = np.full(n, np.inf)
        if fixed_zero:
            hi[list(fixed_zero)] = 0.0
        if fixed_one:
            idx = list(fixed_one)
            lo[idx] = 1.0
            hi[idx] = 1.0
        self.lp.set_bounds(lo, hi)
        basis, at_upper = warm if warm else (None, None)
        res = self.lp.solve(basis, at_upper)
        if res.status != "optimal":
            raise RuntimeError(f"master LP ended with status {res.status}")
        return LpSolution(res.x.copy(), np.maximum(res.y, 0.0), res.objective,
                          (res.basis, res.at_upper))


def solve_master_lp(model: MasterModel, fixed_zero=None, fixed_one=None, warm=None) -> LpSolution:
    """LP relaxation of ``model`` under its own (or the given) fixings."""
    fz = model.fixed_zero if fixed_zero is None else fixed_zero
    fo = model.fixed_one if fixed_one is None else fixed_one
    return MasterLP(model).solve(fz, fo, warm)


class Pricer:
    """Column generator bound to one graph."""

    def __init__(self, graph: Graph, eps: float = DEFAULT_EPS, method: str = "lazy",
                 budget: int = COPY_BUDGET):
        self.graph = graph
        self.eps = eps
        self.method = method
        self.budget = budget

    def __call__(self, y, forbidden, blocked) -> Cycle | None:
        return price(self.graph, y, forbidden, self.eps, blocked, self.method, self.budget)


@dataclass
class NodeLog:
    """Per-node trace kept when ``record=True``."""

    depth: int
    lp_values: list[float]
    duals: np.ndarray | None = None
    forbidden: list[Cycle] | None = None
    blocked: frozenset | None = None
    closed: bool = False


@dataclass
class SolveReport:
    incumbent: Decomposition
    objective: int
    upper_bound: float
    optimal: bool
    nodes: int
    columns_generated: int
    wall_time: float
    status: str  # optimal | time_limit | budget_exceeded
    logs: list[NodeLog] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "incumbent": self.incumbent.to_lists(),
            "objective": self.objective,
            "upper_bound": round(self.upper_bound, 9),
            "optimal": self.optimal,
            "nodes": self.nodes,
            "columns_generated": self.columns_generated,
            "wall_time": round(self.wall_time, 6),
            "status": self.status,
        }


def _floor_bound(v: float) -> float:
    return math.floor(v + INT_TOL) if math.isfinite(v) else v


def branch_and_bound(model: MasterModel, pricer: Optional[Callable] = None,
                     incumbent_init: Decomposition | None = None,
                     time_limit: float = DEFAULT_TIME_LIMIT, record: bool = False) -> SolveReport:
    """Depth-first branch-and-bound on ``x_C``, one-branch first.

    Each node solves the master LP (closing it by column generation when a
    pricer is attached), accepts integral solutions as incumbents, prunes
    when ``floor(LP + 1e-6)`` cannot beat the incumbent, and otherwise
    branches on the most fractional column.
    """
    t0 = time.perf_counter()
    g = model.graph
    cap = trivial_upper_bound(g)
    deadline = t0 + time_limit

    best_cycles: list[Cycle] = []
    if incumbent_init is not None:
        if not validate_decomposition(g, incumbent_init, require_complete=False):
            raise GraphError("initial incumbent is not an edge-disjoint cycle set")
        best_cycles = list(incumbent_init.cycles)
    best = len(best_cycles)

    root_fz = frozenset(model.fixed_zero)
    root_fo = frozenset(model.fixed_one)
    model.blocked_edges(root_fo)
    # (fixed_zero, fixed_one, parent bound, depth, warm basis)
    stack = [(root_fz, root_fo, math.inf, 0, None)]
    engine = MasterLP(model)
    nodes = 0
    generated = 0
    timed_out = False
    budget_hit = False
    side_bound = -math.inf  # valid bounds of nodes whose pricing was cut short
    open_bound = -math.inf
    logs: list[NodeLog] = []

    def done():
        return best >= cap

    while stack and not done():
        if time.perf_counter() > deadline:
            timed_out = True
            break
        fz, fo, parent_bound, depth, warm = stack.pop()
        if _floor_bound(parent_bound) <= best:
            continue
        nodes += 1
        nlog = NodeLog(depth, [])
        if record:
            logs.append(nlog)
        lp = engine.solve(fz, fo, warm)
        nlog.lp_values.append(lp.objective)
        node_budget = False
        if pricer is not None:
            blocked = frozenset(model.blocked_edges(fo))
            while True:
                if time.perf_counter() > deadline:
                    timed_out = True
                    break
                forbidden = [model.pool[j] for j in sorted(fz)]
                try:
                    col = pricer(lp.y, forbidden, blocked)
                except PricingBudgetExceeded:
                    node_budget = True
                    break
                if col is None:
                    nlog.closed = True
                    if record:
                        nlog.duals = lp.y.copy()
                        nlog.forbidden = forbidden
                        nlog.blocked = blocked
                    break
                if model.index_of(col) is not None:
                    log.warning("pricer returned pooled cycle %s; stopping column generation", col.vertices)
                    nlog.closed = True
                    break
                model.add(col)
                generated += 1
                lp = engine.solve(fz, fo, lp.basis)
                nlog.lp_values.append(lp.objective)
            if timed_out:
                open_bound = max(open_bound, min(parent_bound, cap))
                break
            if node_budget:
                budget_hit = True
                side_bound = max(side_bound, _farley_bound(g, lp, fo, blocked, model))

        bound = lp.objective
        if _floor_bound(bound) <= best:
            continue
        x = lp.x
        frac = [(abs(x[j] - 0.5), j) for j in range(len(model.pool))
                if j not in fo and INT_TOL < x[j] < 1 - INT_TOL]
        if not frac:
            chosen = [model.pool[j] for j in range(len(model.pool)) if x[j] > 1 - INT_TOL]
            if len(chosen) > best:
                best = len(chosen)
                best_cycles = chosen
            continue
        if pricer is None:
            fz = fz | _reduced_cost_fixing(model, lp, fz, fo, best)
        rounded = _round_lp(model, lp.x, fo)
        if len(rounded) > best:
            best = len(rounded)
            best_cycles = rounded
            if _floor_bound(bound) <= best:
                continue
        _, j = min(frac)
        stack.append((fz | {j}, fo, bound, depth + 1, lp.basis))
        stack.append((fz, fo | {j}, bound, depth + 1, lp.basis))

    if stack and not done():
        open_bound = max([open_bound] + [min(b, cap) for _, _, b, _, _ in stack])
    upper = max(float(best), open_bound, side_bound)
    upper = min(upper, float(cap))
    proven = best >= _floor_bound(upper)
    if timed_out and not proven:
        status = "time_limit"
    elif budget_hit and not proven:
        status = "budget_exceeded"
    else:
        status = "optimal"
        upper = min(upper, float(best)) if proven else upper
    return SolveReport(
        incumbent=Decomposition(best_cycles),
        objective=best,
        upper_bound=upper,
        optimal=status == "optimal",
        nodes=nodes,
        columns_generated=generated,
        wall_time=time.perf_counter() - t0,
        status=status,
        logs=logs,
    )


def _reduced_cost_fixing(model: MasterModel, lp: LpSolution, fz, fo, best: int) -> frozenset:
    """Columns that cannot appear in any packing better than ``best`` below
    this node: with dual-feasible ``y``, a packing using column ``j`` is
    worth at most ``LP + (1 - y(C_j))``."""
    out = []
    slack = lp.objective - (best + 1) + INT_TOL
    for j, c in enumerate(model.pool):
        if j in fz or j in fo:
            continue
        rc = 1.0 - sum(lp.y[e] for e in c.edge_indices)
        if rc < -slack - 1e-9:
            out.append(j)
    return frozenset(out)


def _round_lp(model: MasterModel, x: np.ndarray, fo) -> list[Cycle]:
    """Packing built from the LP point: fixed cycles, then columns by
    decreasing value, then shorter cycles first among the rest."""
    order = sorted(range(len(model.pool)),
                   key=lambda j: (j not in fo, -x[j], len(model.pool[j]), j))
    used: set[int] = set()
    chosen = []
    for j in order:
        es = model.pool[j].edge_indices
        if used.isdisjoint(es):
            used |= es
            chosen.append(model.pool[j])
    return chosen


def _farley_bound(g: Graph, lp: LpSolution, fo, blocked, model: MasterModel) -> float:
    """Valid node bound from duals that failed to close: scale ``y`` until
    it covers the lightest cycle avoiding the fixed edges."""
    free_edges = g.m - len(blocked)
    trivial = len(fo) + free_edges // 3
    found = minimum_weight_cycle(g, lp.y, blocked)
    if found is None:
        return float(len(fo))
    if found.weight <= 1e-12:
        return float(trivial)
    # y restricted to free edges, scaled to cover every free cycle, is dual feasible
    dual_obj = math.fsum(lp.y[e] for e in range(g.m) if e not in blocked)
    return min(float(trivial), len(fo) + dual_obj / min(found.weight, 1.0))
