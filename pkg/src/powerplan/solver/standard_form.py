"""Matrix form of an assembled model."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..core.expr import Sense


@dataclass
class StandardFormLP:
    """min c.x + obj_constant  s.t.  A x (senses) rhs,  lb <= x <= ub."""

    c: np.ndarray
    A: sp.csr_array
    senses: List[Sense]
    rhs: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    integer: np.ndarray
    col_names: List[str]
    row_names: List[str]
    obj_constant: float = 0.0
    col_index: Dict[str, int] = field(init=False, repr=False)
    row_index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.col_index = {n: j for j, n in enumerate(self.col_names)}
        self.row_index = {n: i for i, n in enumerate(self.row_names)}

    @property
    def shape(self):
        return self.A.shape

    @property
    def nnz(self) -> int:
        return int(self.A.nnz)

    @property
    def has_integers(self) -> bool:
        return bool(self.integer.any())

    def with_bounds(self, lb, ub) -> "StandardFormLP":
        return StandardFormLP(
            self.c, self.A, self.senses, self.rhs, np.asarray(lb, float), np.asarray(ub, float),
            self.integer, self.col_names, self.row_names, self.obj_constant,
        )

    def relaxed(self) -> "StandardFormLP":
        return StandardFormLP(
            self.c, self.A, self.senses, self.rhs, self.lb, self.ub,
            np.zeros_like(self.integer), self.col_names, self.row_names, self.obj_constant,
        )

    @classmethod
    def from_arrays(
        cls,
        c,
        A,
        senses: Sequence,
        rhs,
        lb=None,
        ub=None,
        integer=None,
        col_names: Optional[Sequence[str]] = None,
        row_names: Optional[Sequence[str]] = None,
        obj_constant: float = 0.0,
    ) -> "StandardFormLP":
        c = np.asarray(c, float)
        n = c.size
        if not sp.issparse(A):
            dense = np.asarray(A, float)
            # reshape(-1, 0) is ambiguous, so size the empty case from rhs
            A = dense.reshape(-1, n) if n else np.zeros((np.asarray(rhs).size, 0))
        A = sp.csr_array(A)
        m = A.shape[0]
        return cls(
            c,
            A,
            [Sense(s) for s in senses],
            np.asarray(rhs, float).reshape(m),
            np.zeros(n) if lb is None else np.asarray(lb, float),
            np.full(n, np.inf) if ub is None else np.asarray(ub, float),
            np.zeros(n, bool) if integer is None else np.asarray(integer, bool),
            list(col_names) if col_names is not None else [f"x{j}" for j in range(n)],
            list(row_names) if row_names is not None else [f"r{i}" for i in range(m)],
            float(obj_constant),
        )


def to_standard_form(model) -> StandardFormLP:
    """Columns follow variable creation order; rows follow constraint order."""
    nvar = len(model.variables)
    rows, cols, vals = [], [], []
    for i, con in enumerate(model.constraints):
        for j, a in con.expression.terms:
            rows.append(i)
            cols.append(j)
            vals.append(a)
    A = sp.csr_array((np.array(vals, float), (np.array(rows, int), np.array(cols, int))), shape=(len(model.constraints), nvar))
    c = np.zeros(nvar)
    obj = model.objective
    const = 0.0
    if obj is not None:
        for j, a in obj.terms:
            c[j] = a
        const = obj.constant
    return StandardFormLP(
        c=c,
        A=A,
        senses=[con.sense for con in model.constraints],
        rhs=np.array([con.rhs for con in model.constraints], float),
        lb=np.array([v.lower for v in model.variables], float),
        ub=np.array([v.upper for v in model.variables], float),
        integer=np.array([v.is_integer for v in model.variables], bool),
        col_names=[v.name for v in model.variables],
        row_names=[con.name for con in model.constraints],
        obj_constant=const,
    )
