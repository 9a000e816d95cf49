"""Benchmark driver: instance grid x methods -> CSV rows."""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bnp import MasterModel, Pricer, branch_and_bound, trivial_upper_bound
from .generate import GenSpec, edge_count, generate_instance
from .graph import Decomposition, Graph, check_decomposition
from .greedy import greedy_runs
from .heuristic import DEFAULT_K, complete_with_greedy, ilp_heuristic_from_runs, pool_from_runs

log = logging.getLogger(__name__)

METHODS = ("greedy", "ilp_h", "ilp_cg", "ilp_cg_h")
HEADER = ["n", "density", "instance", "method", "objective", "optimal", "triangle_pct", "time_s", "status"]
DESK_SIZES = (10, 20, 30)
DESK_DENSITIES = (0.1, 0.2, 0.3, 0.4, 0.5)


class ValidationFailure(AssertionError):
    pass


def triangle_percentage(d: Decomposition) -> float:
    if len(d) == 0:
        return 0.0
    return 100.0 * sum(1 for c in d if len(c) == 3) / len(d)


def desk_grid(seed: int = 0, count: int = 20, sizes=DESK_SIZES, densities=DESK_DENSITIES) -> list[GenSpec]:
    """Grid cells whose edge count reaches the vertex count."""
    return [GenSpec(n, dens, seed, count) for n in sizes for dens in densities
            if edge_count(n, dens) >= n]


@dataclass
class Row:
    n: int
    density: float
    instance: str
    method: str
    objective: float
    optimal: str
    triangle_pct: float
    time_s: float
    status: str
    decomposition: Decomposition | None = field(default=None, repr=False)

    def cells(self, timings: bool = True) -> list[str]:
        obj = self.objective
        obj_s = str(obj) if isinstance(obj, int) else f"{obj:.4f}"
        return [str(self.n), f"{self.density:g}", self.instance, self.method, obj_s, self.optimal,
                f"{self.triangle_pct:.2f}", f"{self.time_s:.3f}" if timings else "", self.status]


def _checked(g: Graph, d: Decomposition, what: str) -> Decomposition:
    problems = check_decomposition(g, d, require_complete=True)
    if problems:
        raise ValidationFailure(f"{what}: {problems[:3]}")
    return d


def run_instance(g: Graph, n: int, density: float, index: int, methods=METHODS, seed: int = 0,
                 time_limit: float = 60.0, k: int = DEFAULT_K) -> list[Row]:
    """All requested methods on one instance; failures become status rows."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, g.m, index, 1]))
    greedy_rng, post_rng = rng.spawn(2)
    inst = str(index)
    rows: list[Row] = []
    cap = trivial_upper_bound(g)

    def row(method, dec, obj, optimal, secs, status):
        return Row(n, density, inst, method, obj, optimal, triangle_percentage(dec) if dec else 0.0,
                   secs, status, dec)

    t = time.perf_counter()
    runs = greedy_runs(g, k, greedy_rng)
    t_greedy = time.perf_counter() - t
    for j, d in enumerate(runs):
        _checked(g, d, f"greedy run {j}")
    sizes = [len(d) for d in runs]
    best_run = runs[int(np.argmax(sizes))]
    if "greedy" in methods:
        avg_tri = float(np.mean([triangle_percentage(d) for d in runs]))
        r = row("g_avg", None, float(np.mean(sizes)), "", t_greedy, "ok")
        r.triangle_pct = avg_tri
        rows.append(r)
        g_max = row("g_max", best_run, max(sizes), "", t_greedy, "ok")
        rows.append(g_max)

    ilp_h = None
    if {"ilp_h", "ilp_cg_h"} & set(methods):
        t = time.perf_counter()
        try:
            ilp_h, rep = ilp_heuristic_from_runs(g, runs, post_rng, time_limit)
            _checked(g, ilp_h, "ilp_h")
            h_status = "ok" if rep.status == "optimal" else rep.status
        except Exception as exc:  # recorded, never aborts the batch
            log.exception("ilp_h failed on n=%d d=%g i=%d", n, density, index)
            ilp_h, h_status = None, f"error:{type(exc).__name__}"
        h_time = time.perf_counter() - t + t_greedy  # the heuristic includes its k greedy runs

    proven = None  # certified optimum from an exact run, if any
    cg_rows = []
    for method in ("ilp_cg", "ilp_cg_h"):
        if method not in methods:
            continue
        t = time.perf_counter()
        try:
            if method == "ilp_cg":
                model = MasterModel(g)
                rep = branch_and_bound(model, Pricer(g), time_limit=time_limit)
            else:
                model = MasterModel(g, pool_from_runs(runs))
                rep = branch_and_bound(model, Pricer(g), incumbent_init=ilp_h, time_limit=time_limit)
            dec = _checked(g, complete_with_greedy(g, rep.incumbent, post_rng), method)
            secs = time.perf_counter() - t
            if rep.optimal:
                proven = rep.objective
            cg_rows.append(row(method, dec, len(dec), _flag(rep.optimal), secs, rep.status))
        except ValidationFailure:
            raise
        except Exception as exc:
            log.exception("%s failed on n=%d d=%g i=%d", method, n, density, index)
            cg_rows.append(row(method, None, 0, "0", time.perf_counter() - t, f"error:{type(exc).__name__}"))

    if "greedy" in methods:
        g_max.optimal = _flag(g_max.objective == cap or g_max.objective == proven)
    if "ilp_h" in methods:
        if ilp_h is None:
            rows.append(row("ilp_h", None, 0, "0", h_time, h_status))
        else:
            opt = len(ilp_h) == cap or (proven is not None and len(ilp_h) == proven)
            rows.append(row("ilp_h", ilp_h, len(ilp_h), _flag(opt), h_time, h_status))
    rows.extend(cg_rows)
    return rows


def _flag(b: bool) -> str:
    return "1" if b else "0"


def _job(args):
    spec, index, methods, seed, time_limit, k = args
    g = generate_instance(spec, index)
    return run_instance(g, spec.n, spec.m_fraction, index, methods, seed, time_limit, k)


def aggregate(rows: list[Row]) -> list[Row]:
    """One summary row per (cell, method): means, OPT percentage in ``optimal``."""
    groups: dict[tuple, list[Row]] = {}
    for r in rows:
        groups.setdefault((r.n, r.density, r.method), []).append(r)
    out = []
    for (n, dens, method), rs in groups.items():
        flagged = [r for r in rs if r.optimal != ""]
        opt = f"{100.0 * sum(r.optimal == '1' for r in flagged) / len(flagged):.1f}" if flagged else ""
        ok = sum(r.status in ("ok", "optimal") for r in rs)
        out.append(Row(n, dens, "mean", method, float(np.mean([r.objective for r in rs])), opt,
                       float(np.mean([r.triangle_pct for r in rs])),
                       float(np.mean([r.time_s for r in rs])), f"{ok}/{len(rs)}"))
    return out


def run_benchmark(cells: list[GenSpec], methods=("greedy", "ilp_h"), seed: int = 0,
                  time_limit: float = 60.0, k: int = DEFAULT_K, workers: int = 1) -> list[Row]:
    """Per-instance rows followed by per-cell summaries, in (cell, instance, method) order."""
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise ValueError(f"unknown methods {bad}")
    for spec in cells:
        if spec.m < spec.n:
            raise ValueError(f"cell n={spec.n} density={spec.m_fraction} has m={spec.m} < n")
    jobs = [(spec, i, tuple(methods), seed, time_limit, k) for spec in cells for i in range(spec.count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_job = list(pool.map(_job, jobs))
    else:
        per_job = [_job(j) for j in jobs]
    rows = [r for rs in per_job for r in rs]
    summary = []
    for spec in cells:
        cell = [r for r in rows if r.n == spec.n and r.density == spec.m_fraction]
        summary.extend(aggregate(cell))
    return rows + summary


def to_csv(rows: list[Row], timings: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow(r.cells(timings))
    return buf.getvalue()
