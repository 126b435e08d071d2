"""Carbon caps and carbon taxes.

Input table
-----------
carbon_policies.csv
    period, and optionally carbon_cap_tco2_per_yr (blank or inf: no cap)
    and carbon_cost_dollar_per_tco2 (blank: 0)

Annual emissions in each period are the fuel burned, weighted up to a
year, times each fuel's CO2 intensity. A cap limits them; a tax adds
``tax * emissions`` to the annual costs of the period.
"""
from __future__ import annotations

import math

from ..core.expr import linear_combine
from ..core.inputs import to_float, to_str
from ..core.output import write_table
from ..energy_sources.properties import annual_emissions
from ..errors import InputError

required_tables = ("carbon_policies",)


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "carbon_policies", __name__, ["period"])
    data.add_foreign_key("carbon_policies", "period", "periods", "period")


def define_components(m):
    m.carbon_cap, m.carbon_tax = {}, {}
    for r in m.data.table("carbon_policies").rows:
        p = to_str(r["period"])
        cap = to_float(r.get("carbon_cap_tco2_per_yr"), math.inf)
        tax = to_float(r.get("carbon_cost_dollar_per_tco2"), 0.0)
        if tax < 0:
            raise InputError(f"carbon tax for {p} must be nonnegative")
        m.carbon_cap[p], m.carbon_tax[p] = cap, tax
    em = annual_emissions(m)
    for p in m.ts.period_labels:
        cap = m.carbon_cap.get(p, math.inf)
        if math.isfinite(cap):
            m.add_constraint("Enforce_Carbon_Cap", p, em[p], "<=", cap)
    m.add_expression("EmissionsCosts", {p: linear_combine([(m.carbon_tax.get(p, 0.0), em[p])]) for p in m.ts.period_labels})
    m.register("cost-period", "EmissionsCosts")


def cap_shadow_price(m, solution, period) -> float:
    """$/tCO2 in the period's years implied by the dual of its cap (0 if uncapped)."""
    con = m.constraint_family("Enforce_Carbon_Cap").get(period)
    if con is None:
        return 0.0
    return -solution.duals.get(con.name, 0.0) / m.period_df[period]


def post_solve(m, solution, outdir):
    em = annual_emissions(m)
    rows = []
    for p in m.ts.period_labels:
        price = cap_shadow_price(m, solution, p) if solution.duals else ""
        rows.append([p, solution.evaluate(em[p]), m.carbon_cap.get(p, math.inf), m.carbon_tax.get(p, 0.0), price])
    header = ["period", "emissions_tco2_per_yr", "cap_tco2_per_yr", "tax_per_tco2", "cap_shadow_price"]
    return [write_table(outdir, "carbon_policies.csv", header, rows)]
