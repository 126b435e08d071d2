"""Best-first branch and bound over LP relaxations."""
from __future__ import annotations

import heapq
import itertools
import logging
import math
from typing import Optional

import numpy as np

from ..errors import NodeLimit
from .simplex import LPResult, make_solution, solve_arrays
from .solution import Solution, SolverOptions, Status

logger = logging.getLogger(__name__)


def _fractional(x, int_idx, tol):
    vals = x[int_idx]
    frac = np.abs(vals - np.round(vals))
    return frac, frac > tol


def branch_and_bound(lp, opts: Optional[SolverOptions] = None) -> Solution:
    """Minimise ``lp`` with its integrality mask enforced.

    Nodes are explored in order of their parent's relaxation bound (ties
    first-in first-out). The branching variable is the integer column whose
    value is furthest from an integer, lowest column index on ties. A node
    is pruned when its bound is within the relative gap of the incumbent.
    """
    opts = opts or SolverOptions()
    int_idx = np.flatnonzero(lp.integer)
    A = lp.A.toarray()
    lb0 = lp.lb.astype(float).copy()
    ub0 = lp.ub.astype(float).copy()
    lb0[int_idx] = np.ceil(lb0[int_idx] - opts.integrality_tol)
    ub0[int_idx] = np.floor(ub0[int_idx] + opts.integrality_tol)

    def gap_tol(value):
        return max(1e-9, opts.relative_mip_gap * abs(value))

    seq = itertools.count()
    heap = [(-math.inf, next(seq), lb0, ub0)]
    best_x, best_obj = None, math.inf
    nodes = branchings = iterations = 0
    hit_limit = False

    while heap:
        bound, _, lb, ub = heapq.heappop(heap)
        if best_x is not None and bound >= best_obj - gap_tol(best_obj):
            heap.clear()  # best-first: every open node is at least as bad
            break
        if nodes >= opts.max_nodes:
            heapq.heappush(heap, (bound, next(seq), lb, ub))
            hit_limit = True
            break
        res = solve_arrays(lp.c, A, lp.senses, lp.rhs, lb, ub, opts)
        nodes += 1
        iterations += res.iterations
        if res.status is Status.INFEASIBLE:
            continue
        if res.status is Status.UNBOUNDED:
            return Solution(Status.UNBOUNDED, {}, -math.inf, iterations=iterations, nodes=nodes)
        obj = float(lp.c @ res.x)
        if best_x is not None and obj >= best_obj - gap_tol(best_obj):
            continue
        frac, is_frac = _fractional(res.x, int_idx, opts.integrality_tol)
        if not is_frac.any():
            best_x, best_obj = res.x, obj
            continue
        # most fractional: distance to nearest integer closest to one half
        score = np.where(is_frac, frac, -1.0)
        k = int(np.argmax(score))
        j = int(int_idx[k])
        v = res.x[j]
        down_ub = ub.copy()
        down_ub[j] = math.floor(v)
        up_lb = lb.copy()
        up_lb[j] = math.ceil(v)
        heapq.heappush(heap, (obj, next(seq), lb, down_ub))
        heapq.heappush(heap, (obj, next(seq), up_lb, ub))
        branchings += 1

    if best_x is None:
        if hit_limit:
            raise NodeLimit(f"no integer solution found within {opts.max_nodes} nodes")
        return Solution(Status.INFEASIBLE, {}, math.inf, iterations=iterations, nodes=nodes, branchings=branchings)

    x = best_x.copy()
    snap = np.abs(x[int_idx] - np.round(x[int_idx])) <= 1e-9
    x[int_idx[snap]] = np.round(x[int_idx[snap]])
    open_bound = min((b for b, *_ in heap), default=best_obj)
    gap = max(0.0, best_obj - open_bound) / max(abs(best_obj), 1e-10)
    status = Status.GAP_LIMIT if hit_limit and gap > opts.relative_mip_gap else Status.OPTIMAL
    if status is Status.GAP_LIMIT:
        logger.warning("node limit reached with relative gap %.3g", gap)
    sol = make_solution(lp, LPResult(Status.OPTIMAL, x, np.zeros(0), iterations))
    sol.status = status
    sol.duals = {}
    sol.mip_gap = gap
    sol.nodes = nodes
    sol.branchings = branchings
    return sol

