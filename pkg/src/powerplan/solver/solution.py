from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..core.expr import LinearExpression, Sense, VariableRef, as_expr


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    GAP_LIMIT = "gap-limit"


@dataclass
class SolverOptions:
    feasibility_tol: float = 1e-7
    integrality_tol: float = 1e-6
    relative_mip_gap: float = 1e-6
    max_iterations: int = 500_000
    max_nodes: int = 200_000
    # "internal", or a shell command template with {input} and {output}
    backend: str = "internal"

    def __post_init__(self):
        for name in ("feasibility_tol", "integrality_tol", "relative_mip_gap"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class Solution:
    status: Status
    values: Dict[str, float]
    objective: float
    duals: Dict[str, float] = field(default_factory=dict)
    mip_gap: float = 0.0
    x: Optional[np.ndarray] = field(default=None, repr=False)
    iterations: int = 0
    nodes: int = 0
    branchings: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def value(self, var) -> float:
        if isinstance(var, VariableRef):
            return float(self.x[var.id])
        return self.values[var]

    def evaluate(self, expr) -> float:
        expr = as_expr(expr)
        return expr.evaluate(self.x)

    def dual(self, name: str) -> float:
        return self.duals.get(name, 0.0)


def row_residuals(lp, x) -> np.ndarray:
    """Violation of every row of ``lp`` at ``x`` (zero when satisfied)."""
    ax = lp.A @ x
    res = np.zeros(len(lp.senses))
    for i, s in enumerate(lp.senses):
        d = ax[i] - lp.rhs[i]
        if s is Sense.LE:
            res[i] = max(0.0, d)
        elif s is Sense.GE:
            res[i] = max(0.0, -d)
        else:
            res[i] = abs(d)
    return res


def dual_objective(lp, y: np.ndarray) -> float:
    """Lagrangian dual value at row multipliers ``y``.

    Returns ``b.y + sum_j min over [lb_j, ub_j] of (c - A'y)_j x_j``; at an
    optimal basic solution this equals the primal optimum.
    """
    d = lp.c - lp.A.T @ y
    total = float(lp.rhs @ y) + lp.obj_constant
    for j, dj in enumerate(d):
        if abs(dj) <= 1e-12:
            continue
        bound = lp.lb[j] if dj > 0 else lp.ub[j]
        if not np.isfinite(bound):
            return -np.inf
        total += dj * bound
    return total


def duals_array(lp, solution) -> np.ndarray:
    return np.array([solution.duals.get(n, 0.0) for n in lp.row_names])
