"""Discounting and the net-present-value objective.

Input table
-----------
financials.csv
    base_financial_year, discount_rate, interest_rate  (one row)

Period cost components are annual amounts ($/yr) charged in every year of
the period. Timepoint cost components are rates ($/h); each is multiplied
by the timepoint weight, spread evenly over the years of the period and
then discounted year by year to ``base_financial_year``. All amounts are
real (inflation-free) currency.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core.expr import LinearExpression, linear_combine
from .core.output import write_table
from .core.inputs import to_float, to_int
from .errors import InputError, UnresolvedRegistryEntry

required_tables = ("financials",)


@dataclass(frozen=True)
class FinancialParams:
    base_financial_year: int
    discount_rate: float
    interest_rate: float

    def __post_init__(self):
        for name in ("discount_rate", "interest_rate"):
            r = getattr(self, name)
            if not 0 <= r < 1:
                raise InputError(f"{name} must lie in [0, 1), got {r}")


def crf(rate: float, life_years: int) -> float:
    """Capital recovery factor: annual payment per unit of overnight cost."""
    if life_years < 1:
        raise ValueError("life_years must be at least 1")
    if rate == 0:
        return 1.0 / life_years
    # expm1/log1p keep precision when the rate is tiny
    growth = math.expm1(life_years * math.log1p(rate))
    return rate * (growth + 1.0) / growth


def period_discount_factor(params: FinancialParams, period) -> float:
    """Present value of 1 $/yr paid at the start of each year of ``period``."""
    offset = period.start_year - params.base_financial_year
    if offset < 0:
        raise InputError(f"period {period.label} starts before base_financial_year {params.base_financial_year}")
    v = 1.0 / (1.0 + params.discount_rate)
    whole = int(math.floor(period.length_years + 1e-9))
    total = sum(v ** (offset + k) for k in range(whole))
    frac = period.length_years - whole
    if frac > 1e-9:
        total += frac * v ** (offset + whole)
    return total


def params_from_rows(rows) -> FinancialParams:
    rows = list(rows)
    if len(rows) != 1:
        raise InputError(f"financials.csv must contain exactly one row, found {len(rows)}")
    r = rows[0]
    return FinancialParams(
        to_int(r["base_financial_year"], what="base_financial_year"),
        to_float(r["discount_rate"], what="discount_rate"),
        to_float(r["interest_rate"], what="interest_rate"),
    )


def tp_annual_factor(ts, tp) -> float:
    """Converts a $/h rate at ``tp`` into $/yr within its period."""
    return ts.weight(tp) / ts.period_of(tp).length_years


def annual_cost_expressions(m) -> Dict[Tuple[str, str], LinearExpression]:
    """(component, period) -> annual cost expression, for every registered component."""
    out = {}
    for name, domain in m.registry.cost_components:
        fam = m.expression(name)
        for p in m.ts.periods:
            if domain == "period":
                out[name, p.label] = fam.get(p.label, LinearExpression())
            else:
                out[name, p.label] = linear_combine(
                    (tp_annual_factor(m.ts, tp), fam[tp]) for tp in m.ts.tps_in_period(p) if tp in fam
                )
    return out


def build_objective(m, params: FinancialParams) -> LinearExpression:
    for name, _ in m.registry.cost_components:
        if name not in m.expressions:
            raise UnresolvedRegistryEntry(f"cost component {name!r} was registered but never defined")
    annual = annual_cost_expressions(m)
    return linear_combine(
        (period_discount_factor(params, m.ts.period(p)), expr) for (_, p), expr in annual.items()
    )


def cost_table(m, solution) -> List[Tuple[str, str, float, float]]:
    """Rows (component, period, annual cost, NPV) evaluated at a solution."""
    rows = []
    for (name, p), expr in annual_cost_expressions(m).items():
        annual = solution.evaluate(expr)
        rows.append((name, p, annual, annual * m.period_df[p]))
    return rows


def load_inputs(data, inputs_dir) -> None:
    data.read_table(inputs_dir, "financials", __name__, ["base_financial_year", "discount_rate", "interest_rate"])


def define_components(m) -> None:
    m.financials = params_from_rows(m.data.table("financials", __name__).rows)
    m.period_df = {p.label: period_discount_factor(m.financials, p) for p in m.ts.periods}


def define_dynamic_components(m) -> None:
    m.set_objective(build_objective(m, m.financials))


def post_solve(m, solution, outdir):
    rows = cost_table(m, solution)
    return [write_table(outdir, "costs_by_component.csv", ["component", "period", "annual_cost", "npv"], rows)]
