"""Reference two-phase primal simplex on a dense bounded-variable tableau.

The problem is brought to ``A' z = b', 0 <= z <= u`` form: finite lower
bounds are shifted to zero, variables with only an upper bound are
mirrored, free variables are split, each inequality row gets a slack and
rows are scaled by their largest coefficient. Phase one minimises the sum
of artificial variables; phase two the (scaled) true objective. Pricing is
Dantzig's largest reduced cost until the run of consecutive degenerate
pivots reaches ``3 * (m + n)``, after which Bland's smallest-index rule
takes over until a non-degenerate pivot is made.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.expr import Sense
from ..errors import IterationLimit
from .solution import Solution, SolverOptions, Status

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
COST_TOL = 1e-9
REINVERT_EVERY = 300


@dataclass
class LPResult:
    status: Status
    x: Optional[np.ndarray]
    y: Optional[np.ndarray]
    iterations: int


class _Tableau:
    def __init__(self, A, b, upper, basis, max_iter):
        self.A = A  # original (scaled) system, kept for reinversion
        self.b = b
        self.m, self.n = A.shape
        self.upper = upper.copy()
        self.basis = basis.copy()
        self.is_basic = np.zeros(self.n, bool)
        self.is_basic[self.basis] = True
        self.at_upper = np.zeros(self.n, bool)
        self.x = np.zeros(self.n)
        self.T = A.copy()
        self.cost = np.zeros(self.n)
        self.d = np.zeros(self.n)
        self.max_iter = max_iter
        self.iterations = 0
        self.since_reinvert = 0
        self.degenerate_run = 0
        self.bland_after = 3 * (self.m + self.n)
        self.reinvert()

    def reinvert(self):
        B = self.A[:, self.basis]
        xn = np.where(self.is_basic, 0.0, self.x)
        self.T = np.linalg.solve(B, self.A)
        self.x[self.basis] = np.linalg.solve(B, self.b - self.A @ xn)
        self.T[:, self.basis] = np.eye(self.m)
        self.set_cost(self.cost)
        self.since_reinvert = 0

    def set_cost(self, cost):
        self.cost = cost
        self.d = cost - cost[self.basis] @ self.T
        self.d[self.basis] = 0.0

    def _entering(self, eligible, bland):
        d = self.d
        improve_up = eligible & ~self.at_upper & (d < -COST_TOL)
        improve_down = eligible & self.at_upper & (d > COST_TOL)
        cand = improve_up | improve_down
        if not cand.any():
            return None
        idx = np.flatnonzero(cand)
        if bland:
            return int(idx[0])
        # largest |d|; argmax returns the first (lowest index) on ties
        return int(idx[np.argmax(np.abs(d[idx]))])

    def run(self, eligible) -> Status:
        """Iterate to optimality for the current cost vector."""
        while True:
            bland = self.degenerate_run >= self.bland_after
            j = self._entering(eligible & ~self.is_basic & (self.upper > 0), bland)
            if j is None:
                return Status.OPTIMAL
            if self.iterations >= self.max_iter:
                raise IterationLimit(f"simplex stopped after {self.iterations} iterations")
            self.iterations += 1
            direction = -1.0 if self.at_upper[j] else 1.0
            alpha = direction * self.T[:, j]
            xb = self.x[self.basis]
            ub = self.upper[self.basis]

            t_best, r_best = self.upper[j], -1
            pos = alpha > PIVOT_TOL
            neg = (alpha < -PIVOT_TOL) & np.isfinite(ub)
            ratios = np.full(self.m, np.inf)
            ratios[pos] = np.maximum(xb[pos], 0.0) / alpha[pos]
            ratios[neg] = np.maximum(ub[neg] - xb[neg], 0.0) / -alpha[neg]
            if self.m:
                t_rows = ratios.min()
                if t_rows < t_best:
                    ties = np.flatnonzero(ratios <= t_rows + 1e-12)
                    if bland:
                        r_best = int(ties[np.argmin(self.basis[ties])])
                    else:
                        r_best = int(ties[np.argmax(np.abs(alpha[ties]))])
                    t_best = t_rows
            if not np.isfinite(t_best):
                return Status.UNBOUNDED

            self.degenerate_run = self.degenerate_run + 1 if t_best <= 1e-12 else 0
            self.x[self.basis] = xb - alpha * t_best
            self.x[j] += direction * t_best
            if r_best < 0:
                # bound flip, basis unchanged
                self.at_upper[j] = not self.at_upper[j]
                self.x[j] = self.upper[j] if self.at_upper[j] else 0.0
                continue
            self._pivot(r_best, j, to_upper=alpha[r_best] < 0)

    def _pivot(self, r, j, to_upper):
        leaving = self.basis[r]
        self.x[leaving] = self.upper[leaving] if to_upper else 0.0
        self.at_upper[leaving] = to_upper
        self.is_basic[leaving] = False
        self.is_basic[j] = True
        self.at_upper[j] = False
        self.basis[r] = j

        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, j] = 0.0
        T[r, j] = 1.0
        self.d -= self.d[j] * T[r]
        self.d[j] = 0.0
        self.since_reinvert += 1
        if self.since_reinvert >= REINVERT_EVERY:
            self.reinvert()


def solve_arrays(c, A, senses, b, lb, ub, opts: SolverOptions) -> LPResult:
    """Solve ``min c.x s.t. A x (senses) b, lb <= x <= ub`` with dense ``A``."""
    c = np.asarray(c, float)
    A = np.asarray(A, float)
    b = np.asarray(b, float)
    m, n = A.shape
    senses = [Sense(s) for s in senses]

    if np.any(lb > ub) or np.any(lb == np.inf) or np.any(ub == -np.inf):
        return LPResult(Status.INFEASIBLE, None, None, 0)

    # empty rows are dropped after checking they hold
    keep = []
    for i in range(m):
        if np.any(A[i] != 0):
            keep.append(i)
            continue
        s, v = senses[i], b[i]
        ok = (s is Sense.LE and v >= -opts.feasibility_tol) or (s is Sense.GE and v <= opts.feasibility_tol) or (
            s is Sense.EQ and abs(v) <= opts.feasibility_tol
        )
        if not ok:
            return LPResult(Status.INFEASIBLE, None, None, 0)

    # column transformation: x_j = shift_j + sign_j * z_k (+ split part)
    cols, signs, owners, upper, shift = [], [], [], [], np.zeros(n)
    for j in range(n):
        lo, hi = lb[j], ub[j]
        if np.isfinite(lo):
            shift[j] = lo
            cols.append(A[:, j])
            signs.append(1.0)
            owners.append(j)
            upper.append(hi - lo)
        elif np.isfinite(hi):
            shift[j] = hi
            cols.append(-A[:, j])
            signs.append(-1.0)
            owners.append(j)
            upper.append(np.inf)
        else:
            for sg in (1.0, -1.0):
                cols.append(sg * A[:, j])
                signs.append(sg)
                owners.append(j)
                upper.append(np.inf)
    nz = len(cols)
    signs = np.array(signs)
    owners = np.array(owners, int)
    Az = np.column_stack(cols) if nz else np.zeros((m, 0))
    cz = signs * c[owners] if nz else np.zeros(0)
    bz = b - A @ shift

    Az, bz = Az[keep], bz[keep]
    rsenses = [senses[i] for i in keep]
    mk = len(keep)

    scale = np.ones(mk)
    for i in range(mk):
        big = np.abs(Az[i]).max() if nz else 0.0
        if big > 0:
            scale[i] = 1.0 / big
    Az = Az * scale[:, None]
    bz = bz * scale

    # slacks
    slack_cols = []
    for i, s in enumerate(rsenses):
        if s is Sense.EQ:
            continue
        col = np.zeros(mk)
        col[i] = 1.0 if s is Sense.LE else -1.0
        slack_cols.append((i, col))
    row_sign = np.where(bz < 0, -1.0, 1.0)
    parts = [Az]
    if slack_cols:
        parts.append(np.column_stack([col for _, col in slack_cols]))
    full = np.hstack(parts) * row_sign[:, None]
    bfull = bz * row_sign
    nslack = len(slack_cols)
    uppers = list(upper) + [np.inf] * nslack

    # initial basis: a +1 slack where available, otherwise an artificial
    basis = np.full(mk, -1, int)
    for k, (i, _) in enumerate(slack_cols):
        if full[i, nz + k] > 0:
            basis[i] = nz + k
    art_rows = np.flatnonzero(basis < 0)
    if art_rows.size:
        art = np.zeros((mk, art_rows.size))
        art[art_rows, np.arange(art_rows.size)] = 1.0
        full = np.hstack([full, art])
        basis[art_rows] = nz + nslack + np.arange(art_rows.size)
        uppers += [np.inf] * art_rows.size
    ntot = full.shape[1]
    is_art = np.zeros(ntot, bool)
    is_art[nz + nslack:] = True
    upper_arr = np.array(uppers, float)

    cmax = np.abs(cz).max() if nz and np.any(cz) else 1.0
    cost_scale = 1.0 / cmax
    c2 = np.zeros(ntot)
    c2[:nz] = cz * cost_scale

    tab = _Tableau(full, bfull, upper_arr, basis, opts.max_iterations)
    every = np.ones(ntot, bool)

    if art_rows.size:
        c1 = is_art.astype(float)
        tab.set_cost(c1)
        tab.run(every)
        tab.reinvert()
        infeas = tab.x[is_art].sum()
        if infeas > opts.feasibility_tol * max(1.0, np.abs(bfull).max()):
            return LPResult(Status.INFEASIBLE, None, None, tab.iterations)
        _drive_out_artificials(tab, is_art)
        tab.upper[is_art] = 0.0
        tab.x[is_art & ~tab.is_basic] = 0.0
        tab.at_upper[is_art] = False

    tab.set_cost(c2)
    status = tab.run(~is_art)
    if status is Status.UNBOUNDED:
        return LPResult(Status.UNBOUNDED, None, None, tab.iterations)
    tab.reinvert()
    # a final pass guards against drift corrected by the reinversion
    tab.run(~is_art)

    z = tab.x[:nz]
    x = shift.copy()
    np.add.at(x, owners, signs * z)
    x = np.clip(x, lb, ub)

    # row duals: B' y = c_B on the internal system, mapped back to original rows
    B = tab.A[:, tab.basis]
    y_int = np.linalg.solve(B.T, c2[tab.basis]) if mk else np.zeros(0)
    y = np.zeros(m)
    y[keep] = y_int * row_sign * scale / cost_scale
    return LPResult(Status.OPTIMAL, x, y, tab.iterations)


def _drive_out_artificials(tab: _Tableau, is_art):
    """Pivot zero-level artificials out of the basis where a structural column allows it."""
    for r in range(tab.m):
        if not is_art[tab.basis[r]]:
            continue
        row = tab.T[r]
        cand = np.flatnonzero((~is_art) & (~tab.is_basic) & (np.abs(row) > 1e-7))
        if cand.size == 0:
            continue  # redundant row; the artificial stays basic at zero
        j = int(cand[np.argmax(np.abs(row[cand]))])
        # degenerate pivot: values unchanged because the artificial is at zero
        tab.x[tab.basis[r]] = 0.0
        tab._pivot(r, j, to_upper=False)
        tab.x[tab.basis] = np.linalg.solve(tab.A[:, tab.basis], tab.b - tab.A @ np.where(tab.is_basic, 0.0, tab.x))


def simplex_solve(lp, opts: Optional[SolverOptions] = None) -> Solution:
    """Solve the LP relaxation of ``lp`` (the integrality mask is ignored)."""
    opts = opts or SolverOptions()
    res = solve_arrays(lp.c, lp.A.toarray(), lp.senses, lp.rhs, lp.lb, lp.ub, opts)
    return make_solution(lp, res)


def make_solution(lp, res: LPResult) -> Solution:
    if res.status is not Status.OPTIMAL:
        obj = np.inf if res.status is Status.INFEASIBLE else -np.inf
        return Solution(res.status, {}, obj, {}, x=None, iterations=res.iterations)
    x = res.x
    values = {name: float(v) for name, v in zip(lp.col_names, x)}
    duals = {name: float(v) + 0.0 for name, v in zip(lp.row_names, res.y)}
    obj = float(lp.c @ x) + lp.obj_constant
    return Solution(Status.OPTIMAL, values, obj, duals, x=x, iterations=res.iterations)
