"""Model store: variables, constraints, named expressions and the shared
cost/balance registries that modules use to cooperate."""
from __future__ import annotations

import logging
import math
from enum import IntEnum
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..errors import (
    DuplicateComponent,
    MissingComponent,
    ModelError,
    PhaseViolation,
    UnresolvedRegistryEntry,
)
from .expr import (
    Constraint,
    Integrality,
    LinearExpression,
    Sense,
    VariableRef,
    as_expr,
    linear_combine,
)

logger = logging.getLogger(__name__)


class Phase(IntEnum):
    ARGUMENTS = 0
    INPUTS = 1
    COMPONENTS = 2
    DYNAMIC = 3
    ASSEMBLED = 4
    POST_SOLVE = 5


COST_KINDS = ("cost-period", "cost-timepoint")
BALANCE_KINDS = ("injection", "withdrawal")
ENERGY = "energy"


class Registry:
    """Named cost components and balance contributions.

    Cost components are period-indexed ($/yr) or timepoint-indexed ($/h).
    Balance contributions are grouped by constraint family (``"energy"``
    for the zonal power balance, ``"spinning_reserve"`` for operating
    reserves); each family keeps ordered injection and withdrawal lists.
    """

    def __init__(self):
        self.cost_components: List[Tuple[str, str]] = []
        self.balance_components: Dict[str, Dict[str, List[str]]] = {}
        self.frozen = False

    def register(self, kind: str, name: str, family: str = ENERGY) -> "Registry":
        if self.frozen:
            raise PhaseViolation(f"cannot register {name!r}: registries are frozen after define_components")
        if kind in COST_KINDS:
            if any(n == name for n, _ in self.cost_components):
                raise DuplicateComponent(f"cost component {name!r} registered twice")
            self.cost_components.append((name, "period" if kind == "cost-period" else "timepoint"))
        elif kind in BALANCE_KINDS:
            fam = self.balance_components.setdefault(family, {"injections": [], "withdrawals": []})
            if name in fam["injections"] or name in fam["withdrawals"]:
                raise DuplicateComponent(f"{name!r} already registered in balance family {family!r}")
            fam["injections" if kind == "injection" else "withdrawals"].append(name)
        else:
            raise ValueError(f"unknown registry kind {kind!r}")
        return self

    def injections(self, family: str = ENERGY) -> List[str]:
        return list(self.balance_components.get(family, {}).get("injections", []))

    def withdrawals(self, family: str = ENERGY) -> List[str]:
        return list(self.balance_components.get(family, {}).get("withdrawals", []))

    def costs(self, domain: Optional[str] = None) -> List[str]:
        return [n for n, d in self.cost_components if domain is None or d == domain]

    def all_names(self) -> List[str]:
        names = [n for n, _ in self.cost_components]
        for fam in self.balance_components.values():
            names += fam["injections"] + fam["withdrawals"]
        return names


def render_name(family: str, index: Sequence[Hashable]) -> str:
    if not isinstance(index, tuple):
        index = (index,)
    if not index:
        return family
    return f"{family}[{','.join(str(i) for i in index)}]"


class Model:
    """The model graph assembled by the modules.

    Modules attach their own sets and parameters as plain attributes
    (``m.ts``, ``m.gens`` ...) and create variables, constraints and named
    expression families through the ``add_*`` methods. After assembly the
    graph is read-only.
    """

    def __init__(self, data=None, options=None, module_names: Iterable[str] = ()):
        self.data = data
        self.options = options
        self.module_names: Tuple[str, ...] = tuple(module_names)
        self.registry = Registry()
        self.phase = Phase.COMPONENTS
        self.variables: List[VariableRef] = []
        self.constraints: List[Constraint] = []
        self.expressions: Dict[str, Dict[Any, LinearExpression]] = {}
        self.objective: Optional[LinearExpression] = None
        self._var_by_name: Dict[str, VariableRef] = {}
        self._con_by_name: Dict[str, int] = {}
        self._var_families: Dict[str, Dict[Any, VariableRef]] = {}
        self._con_families: Dict[str, Dict[Any, Constraint]] = {}

    def __getattr__(self, name):
        # only reached for attributes that were never set
        if name.startswith("__"):
            raise AttributeError(name)
        raise MissingComponent(
            f"model has no component {name!r}; the module that defines it may be missing "
            f"from the module list or listed after the module that needs it"
        )

    def has_module(self, name: str) -> bool:
        return name in self.module_names

    def option(self, name: str, default=None):
        if self.options is None:
            return default
        v = getattr(self.options, name, None)
        return default if v is None else v

    def _check_mutable(self):
        if self.phase >= Phase.ASSEMBLED:
            raise PhaseViolation("the model graph is immutable after assembly")

    # variables
    def add_var(
        self,
        family: str,
        index: Tuple = (),
        lower: float = 0.0,
        upper: float = math.inf,
        integer: bool = False,
    ) -> VariableRef:
        self._check_mutable()
        if not isinstance(index, tuple):
            index = (index,)
        name = render_name(family, index)
        if name in self._var_by_name:
            raise DuplicateComponent(f"variable {name} defined twice")
        lower, upper = float(lower), float(upper)
        if math.isnan(lower) or math.isnan(upper) or lower > upper:
            raise ModelError(f"variable {name} has invalid bounds [{lower}, {upper}]")
        v = VariableRef(
            len(self.variables),
            name,
            lower,
            upper,
            Integrality.INTEGER if integer else Integrality.CONTINUOUS,
        )
        self.variables.append(v)
        self._var_by_name[name] = v
        self._var_families.setdefault(family, {})[index if len(index) != 1 else index[0]] = v
        return v

    def add_vars(self, family: str, indices: Iterable, **kw) -> Dict[Any, VariableRef]:
        """Create one variable per index; ``lower``/``upper`` may be callables of the index."""
        out = {}
        lower, upper = kw.pop("lower", 0.0), kw.pop("upper", math.inf)
        for idx in indices:
            lo = lower(idx) if callable(lower) else lower
            up = upper(idx) if callable(upper) else upper
            out[idx] = self.add_var(family, idx if isinstance(idx, tuple) else (idx,), lo, up, **kw)
        self._var_families.setdefault(family, {})
        return out

    def var(self, name: str) -> VariableRef:
        return self._var_by_name[name]

    def var_family(self, family: str) -> Dict[Any, VariableRef]:
        return self._var_families.get(family, {})

    # constraints
    def add_constraint(self, family: str, index, lhs, sense, rhs=0.0) -> Constraint:
        self._check_mutable()
        if not isinstance(index, tuple):
            index = (index,)
        name = render_name(family, index)
        if name in self._con_by_name:
            raise DuplicateComponent(f"constraint {name} defined twice")
        body = linear_combine([(1.0, lhs), (-1.0, rhs)])
        con = Constraint(name, body.without_constant(), Sense(sense), -body.constant)
        self._con_by_name[name] = len(self.constraints)
        self.constraints.append(con)
        self._con_families.setdefault(family, {})[index if len(index) != 1 else index[0]] = con
        return con

    def constraint(self, name: str) -> Constraint:
        return self.constraints[self._con_by_name[name]]

    def constraint_family(self, family: str) -> Dict[Any, Constraint]:
        return self._con_families.get(family, {})

    # named expressions
    def add_expression(self, family: str, mapping: Dict[Any, Any]) -> Dict[Any, LinearExpression]:
        self._check_mutable()
        if family in self.expressions:
            raise DuplicateComponent(f"expression family {family!r} defined twice")
        fam = {k: as_expr(v) for k, v in mapping.items()}
        self.expressions[family] = fam
        return fam

    def expression(self, family: str) -> Dict[Any, LinearExpression]:
        try:
            return self.expressions[family]
        except KeyError:
            raise UnresolvedRegistryEntry(f"registered component {family!r} was never defined") from None

    def register(self, kind: str, name: str, family: str = ENERGY) -> None:
        if self.phase != Phase.COMPONENTS:
            raise PhaseViolation(f"cannot register {name!r} outside define_components")
        self.registry.register(kind, name, family)

    def set_objective(self, expr) -> None:
        self._check_mutable()
        if self.objective is not None:
            raise DuplicateComponent("objective defined twice")
        self.objective = as_expr(expr)

    def check_registry(self) -> None:
        for name in self.registry.all_names():
            self.expression(name)
