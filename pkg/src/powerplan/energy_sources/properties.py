"""Fuels and non-fuel energy sources.

Input tables
------------
fuels.csv
    fuel, co2_intensity (tCO2/MMBtu), is_renewable (optional, default 0)
non_fuel_energy_sources.csv
    energy_source, is_renewable (optional, default 1)

Projects name their energy source in ``projects.csv``. Fueled projects burn
one or more fuels (``gas;oil``); non-fuel projects (wind, solar, water) have
no fuel cost. Storage projects use the reserved source ``electricity``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.expr import linear_combine
from ..core.inputs import to_bool, to_float, to_str
from ..core.output import write_table
from ..errors import InputError

required_tables = ("fuels", "non_fuel_energy_sources")

ELECTRICITY = "electricity"
EMISSIONS = "AnnualEmissions"


@dataclass(frozen=True)
class Fuel:
    name: str
    co2_intensity: float
    is_renewable: bool = False


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "fuels", __name__, ["fuel", "co2_intensity"])
    data.read_table(inputs_dir, "non_fuel_energy_sources", __name__, ["energy_source"])


def define_components(m):
    m.fuels = {}
    for r in m.data.table("fuels").rows:
        f = Fuel(to_str(r["fuel"]), to_float(r["co2_intensity"], what="co2_intensity"), to_bool(r.get("is_renewable"), False))
        if not math.isfinite(f.co2_intensity) or f.co2_intensity < 0:
            raise InputError(f"fuel {f.name} needs a finite nonnegative co2_intensity")
        m.fuels[f.name] = f
    m.non_fuel_sources = {}
    for r in m.data.table("non_fuel_energy_sources").rows:
        m.non_fuel_sources[to_str(r["energy_source"])] = to_bool(r.get("is_renewable"), True)
    clash = set(m.fuels) & set(m.non_fuel_sources)
    if clash or ELECTRICITY in m.fuels:
        raise InputError(f"energy source(s) listed as both fuel and non-fuel: {sorted(clash | {ELECTRICITY} & set(m.fuels))}")


def annual_emissions(m):
    """tCO2 per year in each period, built once from the fuel-use variables."""
    if EMISSIONS in m.expressions:
        return m.expressions[EMISSIONS]
    fuel_use = m.__dict__.get("fuel_use", {})
    by_period = {p: [] for p in m.ts.period_labels}
    for (g, tp, f), v in fuel_use.items():
        p = m.ts.period_of(tp)
        k = m.fuels[f].co2_intensity * m.ts.weight(tp) / p.length_years
        if k:
            by_period[p.label].append((k, v))
    return m.add_expression(EMISSIONS, {p: linear_combine(items) for p, items in by_period.items()})


def post_solve(m, solution, outdir):
    if "fuel_use" not in m.__dict__:
        return []
    em = m.expressions.get(EMISSIONS)
    rows = []
    for p in m.ts.periods:
        fuel_totals = {}
        for (g, tp, f), v in m.fuel_use.items():
            if m.ts.period_of(tp).label == p.label:
                fuel_totals[f] = fuel_totals.get(f, 0.0) + solution.value(v) * m.ts.weight(tp) / p.length_years
        total = solution.evaluate(em[p.label]) if em is not None else sum(
            q * m.fuels[f].co2_intensity for f, q in fuel_totals.items()
        )
        for f in sorted(fuel_totals):
            rows.append([p.label, f, fuel_totals[f], fuel_totals[f] * m.fuels[f].co2_intensity])
        rows.append([p.label, "total", sum(fuel_totals.values()), total])
    return [write_table(outdir, "emissions.csv", ["period", "fuel", "fuel_mmbtu_per_year", "tco2_per_year"], rows)]


def define_dynamic_components(m):
    # policies may have built it already; otherwise build it for reporting
    annual_emissions(m)
