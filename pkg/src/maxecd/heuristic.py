"""ILP-Heuristic: restricted packing model over cycles found by GREEDY."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .bnp import DEFAULT_TIME_LIMIT, MasterModel, SolveReport, branch_and_bound
from .graph import Cycle, Decomposition, Graph, make_cycle, subgraph_without
from .greedy import greedy_decomposition, greedy_runs

DEFAULT_K = 100


def pool_from_runs(runs: Sequence[Decomposition]) -> list[Cycle]:
    """Distinct cycles of the given decompositions in first-seen order."""
    seen = {}
    for d in runs:
        for c in d:
            seen.setdefault(c.vertices, c)
    return list(seen.values())


def build_pool(g: Graph, k: int, rng: np.random.Generator) -> tuple[list[Cycle], int]:
    """Cycles of ``k`` greedy decompositions and the size of the best one."""
    if k < 1:
        raise ValueError("k must be at least 1")
    runs = greedy_runs(g, k, rng)
    return pool_from_runs(runs), max(len(d) for d in runs)


def complete_with_greedy(g: Graph, partial: Decomposition, rng: np.random.Generator) -> Decomposition:
    """Add a greedy decomposition of the uncovered edges to ``partial``."""
    rest, old_index = subgraph_without(g, partial.covered)
    if rest.m == 0:
        return partial
    extra = greedy_decomposition(rest, rng)
    lifted = [make_cycle(g, c.vertices) for c in extra]
    return Decomposition(list(partial.cycles) + lifted)


def ilp_heuristic_from_runs(g: Graph, runs: Sequence[Decomposition], rng: np.random.Generator,
                            time_limit: float = DEFAULT_TIME_LIMIT) -> tuple[Decomposition, SolveReport]:
    """Restricted solve over the cycles of ``runs``, then greedy clean-up.

    The best run seeds the incumbent, so the result is never smaller than
    it even when the solve stops on the time limit.
    """
    best_run = max(runs, key=len)
    model = MasterModel(g, pool_from_runs(runs))
    report = branch_and_bound(model, pricer=None, incumbent_init=best_run, time_limit=time_limit)
    return complete_with_greedy(g, report.incumbent, rng), report


def ilp_heuristic(g: Graph, k: int = DEFAULT_K, rng: np.random.Generator | None = None,
                  time_limit: float = DEFAULT_TIME_LIMIT) -> tuple[Decomposition, SolveReport]:
    if rng is None:
        rng = np.random.default_rng()
    if k < 1:
        raise ValueError("k must be at least 1")
    post_rng = rng.spawn(1)[0]
    runs = greedy_runs(g, k, rng)
    return ilp_heuristic_from_runs(g, runs, post_rng, time_limit)
