"""Bounded-variable revised simplex for small dense LPs.

Solves ``max c.x  s.t.  A x <= b,  lower <= x <= upper`` with one slack per
row. Slacks are numbered first, so appending columns never renumbers a
stored basis. The basis inverse is kept explicitly, updated by
elementary row operations and refactored periodically.

A warm basis that is primal feasible is continued by primal simplex; one
that is only dual feasible (the usual case after a bound change in
branch-and-bound) is repaired by dual simplex first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_PIVOT = 1e-9
TOL_COST = 1e-9
TOL_FEAS = 1e-9
REFACTOR_EVERY = 50
DEGENERATE_SWITCH = 30


class LPError(RuntimeError):
    pass


@dataclass
class LPResult:
    status: str  # optimal | unbounded | infeasible | iteration_limit
    x: np.ndarray
    y: np.ndarray
    objective: float
    basis: list[int]
    at_upper: np.ndarray
    iterations: int


class BoundedSimplex:
    """Persistent LP that supports appending columns and changing bounds."""

    def __init__(self, A, b, c, lower=None, upper=None):
        A = np.asarray(A, dtype=float)
        self.b = np.asarray(b, dtype=float)
        m = len(self.b)
        if A.size == 0:
            A = np.zeros((m, 0))
        if A.shape[0] != m:
            raise LPError("row count of A does not match b")
        if np.any(self.b < -TOL_FEAS):
            raise LPError("right-hand side must be nonnegative")
        self.m = m
        self.full = np.hstack([np.eye(m), A])
        n = A.shape[1]
        self.cost = np.concatenate([np.zeros(m), np.asarray(c, dtype=float).reshape(n)])
        self.lo = np.zeros(m + n)
        self.hi = np.full(m + n, np.inf)
        self.set_bounds(lower, upper)
        self._norms = np.sqrt(1.0 + (self.full * self.full).sum(axis=0))

    @property
    def n(self) -> int:
        return self.full.shape[1] - self.m

    def add_columns(self, cols, c, lower=None, upper=None) -> None:
        cols = np.asarray(cols, dtype=float).reshape(self.m, -1)
        k = cols.shape[1]
        self.full = np.hstack([self.full, cols])
        self.cost = np.concatenate([self.cost, np.asarray(c, dtype=float).reshape(k)])
        self.lo = np.concatenate([self.lo, np.zeros(k) if lower is None else np.asarray(lower, float)])
        self.hi = np.concatenate([self.hi, np.full(k, np.inf) if upper is None else np.asarray(upper, float)])
        self._norms = np.concatenate([self._norms, np.sqrt(1.0 + (cols * cols).sum(axis=0))])

    def set_bounds(self, lower=None, upper=None) -> None:
        m = self.m
        self.lo[m:] = 0.0 if lower is None else np.asarray(lower, dtype=float)
        self.hi[m:] = np.inf if upper is None else np.asarray(upper, dtype=float)
        if np.any(self.hi < self.lo):
            raise LPError("a lower bound exceeds its upper bound")
        if np.any(~np.isfinite(self.lo)):
            raise LPError("lower bounds must be finite")

    # -- helpers ---------------------------------------------------------

    def _values_nonbasic(self, upp):
        return np.where(upp, self.hi, self.lo)

    def _factor(self, bas, upp):
        Binv = np.linalg.inv(self.full[:, bas])
        xn = self._values_nonbasic(upp)
        xn[bas] = 0.0
        xn[~np.isfinite(xn)] = 0.0
        xb = Binv @ (self.b - self.full @ xn)
        xb[np.abs(xb) < TOL_FEAS] = 0.0
        return Binv, xb

    def _reduced(self, bas, Binv, in_basis):
        y = self.cost[bas] @ Binv
        d = self.cost - y @ self.full
        d[in_basis] = 0.0
        return y, d

    def _dual_feasible(self, d, upp, in_basis):
        movable = (~in_basis) & (self.hi > self.lo)
        bad_lo = movable & ~upp & (d > 1e-7)
        bad_hi = movable & upp & (d < -1e-7)
        return not (bad_lo.any() or bad_hi.any())

    def _primal_feasible(self, bas, xb):
        return bool(np.all(xb >= self.lo[bas] - 1e-7) and np.all(xb <= self.hi[bas] + 1e-7))

    # -- driver ----------------------------------------------------------

    def solve(self, basis=None, at_upper=None, max_iter: int = 100_000) -> LPResult:
        total = self.full.shape[1]
        state = None
        if basis is not None and len(basis) == self.m and max(basis, default=-1) < total:
            upp = np.zeros(total, dtype=bool)
            if at_upper is not None:
                k = min(len(at_upper), total)
                upp[:k] = np.asarray(at_upper[:k], dtype=bool)
            upp &= np.isfinite(self.hi)
            bas = list(basis)
            upp[bas] = False
            try:
                Binv, xb = self._factor(bas, upp)
                state = [bas, upp, Binv, xb]
            except np.linalg.LinAlgError:
                state = None
        iters = 0
        if state is not None:
            bas, upp, Binv, xb = state
            if not self._primal_feasible(bas, xb):
                in_basis = np.zeros(total, dtype=bool)
                in_basis[bas] = True
                _, d = self._reduced(bas, Binv, in_basis)
                if self._dual_feasible(d, upp, in_basis):
                    status, iters = self._dual(state, max_iter)
                    if status == "infeasible":
                        return self._result("infeasible", state, iters)
                    if status != "optimal" or not self._primal_feasible(state[0], state[3]):
                        state = None
                else:
                    state = None
        if state is None:
            bas = list(range(self.m))
            upp = np.zeros(total, dtype=bool)
            Binv, xb = self._factor(bas, upp)
            state = [bas, upp, Binv, xb]
            if not self._primal_feasible(bas, xb):
                raise LPError("slack basis is infeasible; phase one is not supported")
        status, more = self._primal(state, max_iter - iters)
        return self._result(status, state, iters + more)

    def _result(self, status, state, iters):
        bas, upp = state[0], state[1]
        Binv, xb = self._factor(bas, upp)
        state[2], state[3] = Binv, xb
        xfull = self._values_nonbasic(upp)
        xfull[bas] = xb
        xfull = np.clip(xfull, self.lo, self.hi)
        y = self.cost[bas] @ Binv
        x = xfull[self.m:]
        obj = float(self.cost[self.m:] @ x)
        return LPResult(status, x, y, obj, list(bas), upp.copy(), iters)

    def _pivot(self, state, leave, q, a, new_q_value, leave_to_upper):
        bas, upp, Binv, xb = state
        out = bas[leave]
        bas[leave] = q
        upp[out] = leave_to_upper
        upp[q] = False
        xb[leave] = new_q_value
        row = Binv[leave] / a[leave]
        Binv -= np.outer(a, row)
        Binv[leave] = row
        xb[np.abs(xb) < TOL_FEAS] = 0.0

    def _primal(self, state, max_iter):
        bas, upp = state[0], state[1]
        total = self.full.shape[1]
        lo, hi = self.lo, self.hi
        movable = hi > lo
        in_basis = np.zeros(total, dtype=bool)
        in_basis[bas] = True
        degenerate = 0
        it = 0
        while it < max_iter:
            it += 1
            if it % REFACTOR_EVERY == 0:
                state[2], state[3] = self._factor(bas, upp)
            Binv, xb = state[2], state[3]
            _, d = self._reduced(bas, Binv, in_basis)
            cand = movable & ~in_basis & (((~upp) & (d > TOL_COST)) | (upp & (d < -TOL_COST)))
            if not cand.any():
                return "optimal", it
            idx = np.flatnonzero(cand)
            bland = degenerate >= DEGENERATE_SWITCH
            if bland:
                # stalling: Bland's rule until the objective moves again
                q = int(idx[0])
            else:
                q = int(idx[np.argmax(np.abs(d[idx]) / self._norms[idx])])
            sigma = -1.0 if upp[q] else 1.0
            a = Binv @ self.full[:, q]
            step = sigma * a  # x_B moves by -t * step
            t_best = hi[q] - lo[q]
            leave = -1
            leave_to_upper = False
            lob, hib = lo[bas], hi[bas]
            ratios = np.full(self.m, np.inf)
            pos = step > TOL_PIVOT
            ratios[pos] = np.maximum(xb[pos] - lob[pos], 0.0) / step[pos]
            neg = (step < -TOL_PIVOT) & np.isfinite(hib)
            ratios[neg] = np.maximum(hib[neg] - xb[neg], 0.0) / -step[neg]
            if self.m:
                t_min = ratios.min()
                if t_min < t_best - TOL_FEAS:
                    ties = np.flatnonzero(ratios <= t_min + TOL_FEAS)
                    if bland:
                        i = int(ties[np.argmin(np.asarray(bas)[ties])])
                    else:
                        i = int(ties[np.argmax(np.abs(step[ties]))])
                    t_best, leave, leave_to_upper = float(ratios[i]), i, bool(neg[i])
            if not np.isfinite(t_best):
                return "unbounded", it
            degenerate = degenerate + 1 if t_best <= TOL_FEAS else 0
            state[3] = xb - t_best * step
            if leave < 0:
                upp[q] = not upp[q]
                continue
            start = hi[q] if upp[q] else lo[q]
            in_basis[bas[leave]] = False
            in_basis[q] = True
            self._pivot(state, leave, q, a, start + sigma * t_best, leave_to_upper)
        return "iteration_limit", it

    def _dual(self, state, max_iter):
        """Dual simplex from a dual feasible basis."""
        bas, upp = state[0], state[1]
        total = self.full.shape[1]
        lo, hi = self.lo, self.hi
        movable = hi > lo
        in_basis = np.zeros(total, dtype=bool)
        in_basis[bas] = True
        d = None
        it = 0
        while it < max_iter:
            it += 1
            if it % REFACTOR_EVERY == 0:
                state[2], state[3] = self._factor(bas, upp)
                d = None
            Binv, xb = state[2], state[3]
            lob, hib = lo[bas], hi[bas]
            below = lob - xb
            above = xb - hib
            infeas = np.maximum(below, above)
            r = int(np.argmax(infeas))
            if infeas[r] <= 1e-7:
                return "optimal", it
            to_lower = below[r] > above[r]
            delta = xb[r] - (lob[r] if to_lower else hib[r])
            if d is None:
                _, d = self._reduced(bas, Binv, in_basis)
            alpha = Binv[r] @ self.full
            free = movable & ~in_basis
            # entering moves must push x_r towards the violated bound
            if to_lower:
                cand = free & (((~upp) & (alpha < -TOL_PIVOT)) | (upp & (alpha > TOL_PIVOT)))
            else:
                cand = free & (((~upp) & (alpha > TOL_PIVOT)) | (upp & (alpha < -TOL_PIVOT)))
            if not cand.any():
                return "infeasible", it
            idx = np.flatnonzero(cand)
            ratio = np.abs(d[idx]) / np.abs(alpha[idx])
            ties = idx[ratio <= ratio.min() + TOL_COST]
            q = int(ties[np.argmax(np.abs(alpha[ties]))])
            a = Binv @ self.full[:, q]
            dq = delta / a[r]
            state[3] = xb - dq * a
            start = hi[q] if upp[q] else lo[q]
            d = d - (d[q] / alpha[q]) * alpha
            in_basis[bas[r]] = False
            in_basis[q] = True
            d[in_basis] = 0.0
            self._pivot(state, r, q, a, start + dq, not to_lower)
        return "iteration_limit", it


def solve_lp(c, A, b, upper=None, lower=None, basis=None, at_upper=None,
             max_iter: int = 100_000) -> LPResult:
    """Maximize ``c @ x`` subject to ``A @ x <= b`` and bounds.

    One-shot wrapper around :class:`BoundedSimplex`; ``basis`` uses its
    slack-first numbering.
    """
    c = np.asarray(c, dtype=float)
    b = np.asarray(b, dtype=float)
    A = np.asarray(A, dtype=float).reshape(len(b), len(c))
    return BoundedSimplex(A, b, c, lower, upper).solve(basis, at_upper, max_iter)
