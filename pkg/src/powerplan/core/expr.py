"""Linear expression algebra.

Expressions are immutable: every operator returns a new object. Terms are
kept as a mapping ``variable id -> coefficient`` with duplicate ids merged
and zero coefficients dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Real
from typing import Iterable, Mapping, Tuple, Union

from ..errors import NonFiniteCoefficient

INF = math.inf


class Integrality(str, Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"


class Sense(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class VariableRef:
    id: int
    name: str
    lower: float = 0.0
    upper: float = INF
    integrality: Integrality = Integrality.CONTINUOUS

    @property
    def is_integer(self) -> bool:
        return self.integrality is Integrality.INTEGER

    def to_expr(self) -> "LinearExpression":
        return LinearExpression({self.id: 1.0})

    def __add__(self, other):
        return self.to_expr() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self.to_expr() - other

    def __rsub__(self, other):
        return as_expr(other) - self.to_expr()

    def __mul__(self, k):
        return self.to_expr() * k

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self.to_expr() / k

    def __neg__(self):
        return self.to_expr() * -1.0


def _check(c: float) -> float:
    c = float(c)
    if not math.isfinite(c):
        raise NonFiniteCoefficient(f"non-finite coefficient {c!r}")
    return c


class LinearExpression:
    __slots__ = ("_terms", "_constant")

    def __init__(self, terms: Mapping[int, float] | None = None, constant: float = 0.0):
        clean = {}
        if terms:
            for vid, c in terms.items():
                c = _check(c)
                if c != 0.0:
                    clean[int(vid)] = c
        self._terms = clean
        self._constant = _check(constant)

    @classmethod
    def _raw(cls, terms: dict, constant: float) -> "LinearExpression":
        # trusted constructor: terms already finite, merged and nonzero
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._constant = constant
        return obj

    @property
    def constant(self) -> float:
        return self._constant

    @property
    def terms(self) -> Tuple[Tuple[int, float], ...]:
        return tuple(sorted(self._terms.items()))

    def coefficient(self, var: Union[VariableRef, int]) -> float:
        vid = var.id if isinstance(var, VariableRef) else var
        return self._terms.get(vid, 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms

    def without_constant(self) -> "LinearExpression":
        return LinearExpression._raw(self._terms, 0.0)

    def evaluate(self, values) -> float:
        """Value of the expression given ``values[var_id]``."""
        return self._constant + sum(c * values[v] for v, c in self._terms.items())

    def __add__(self, other):
        return linear_combine([(1.0, self), (1.0, other)])

    __radd__ = __add__

    def __sub__(self, other):
        return linear_combine([(1.0, self), (-1.0, other)])

    def __rsub__(self, other):
        return linear_combine([(1.0, other), (-1.0, self)])

    def __mul__(self, k):
        if not isinstance(k, Real):
            return NotImplemented
        return linear_combine([(k, self)])

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, Real):
            return NotImplemented
        return linear_combine([(1.0 / k, self)])

    def __neg__(self):
        return self * -1.0

    def __eq__(self, other):
        if isinstance(other, (VariableRef, Real)):
            other = as_expr(other)
        if not isinstance(other, LinearExpression):
            return NotImplemented
        return self._terms == other._terms and self._constant == other._constant

    def __hash__(self):
        return hash((self.terms, self._constant))

    def __repr__(self):
        parts = [f"{c:+g}*x{v}" for v, c in self.terms]
        if self._constant or not parts:
            parts.append(f"{self._constant:+g}")
        return "LinearExpression(" + " ".join(parts) + ")"


ExprLike = Union[LinearExpression, VariableRef, Real]


def as_expr(x: ExprLike) -> LinearExpression:
    if isinstance(x, LinearExpression):
        return x
    if isinstance(x, VariableRef):
        return x.to_expr()
    if isinstance(x, Real):
        return LinearExpression(None, float(x))
    raise TypeError(f"cannot build a linear expression from {type(x).__name__}")


def linear_combine(items: Iterable[Tuple[float, ExprLike]]) -> LinearExpression:
    """Return the normalized expression sum(k * e for k, e in items)."""
    terms: dict = {}
    constant = 0.0
    for k, e in items:
        k = _check(k)
        if k == 0.0:
            continue
        if isinstance(e, VariableRef):
            terms[e.id] = terms.get(e.id, 0.0) + k
            continue
        if isinstance(e, Real):
            constant += k * _check(e)
            continue
        e = as_expr(e)
        for v, c in e._terms.items():
            terms[v] = terms.get(v, 0.0) + k * c
        constant += k * e._constant
    for v in [v for v, c in terms.items() if c == 0.0]:
        del terms[v]
    for c in terms.values():
        _check(c)
    return LinearExpression._raw(terms, _check(constant))


def quicksum(items: Iterable[ExprLike]) -> LinearExpression:
    return linear_combine((1.0, e) for e in items)


@dataclass(frozen=True)
class Constraint:
    name: str
    expression: LinearExpression
    sense: Sense
    rhs: float

    def residual(self, values) -> float:
        """Amount by which the row is violated (0 when satisfied)."""
        lhs = self.expression.evaluate(values)
        if self.sense is Sense.LE:
            return max(0.0, lhs - self.rhs)
        if self.sense is Sense.GE:
            return max(0.0, self.rhs - lhs)
        return abs(lhs - self.rhs)
