"""Flat fuel prices per zone and period.

Input table
-----------
fuel_cost.csv
    load_zone, fuel, period, fuel_cost ($/MMBtu)

Fuels that are traded through ``fuel_costs.markets`` must not also have
flat prices.
"""
from __future__ import annotations

from collections import defaultdict

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_str
from ...errors import ConfigError, MissingInput

required_tables = ("fuel_cost",)
MARKETS = "energy_sources.fuel_costs.markets"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "fuel_cost", __name__, ["load_zone", "fuel", "period", "fuel_cost"])
    data.add_foreign_key("fuel_cost", "load_zone", "load_zones", "load_zone")
    data.add_foreign_key("fuel_cost", "fuel", "fuels", "fuel")
    data.add_foreign_key("fuel_cost", "period", "periods", "period")


def market_fuels(m):
    if not m.has_module(MARKETS):
        return set()
    return {to_str(r["fuel"]) for r in m.data.rows("zone_to_fuel_market")}


def define_components(m):
    prices = {}
    for r in m.data.table("fuel_cost").rows:
        prices[to_str(r["load_zone"]), to_str(r["fuel"]), to_str(r["period"])] = to_float(r["fuel_cost"], what="fuel_cost")
    traded = market_fuels(m)
    both = sorted({f for _, f, _ in prices} & traded)
    if both:
        raise ConfigError(f"fuel(s) {both} have both flat prices and a market; use one pricing module per fuel")
    m.fuel_price = prices
    cost = defaultdict(list)
    for (g, tp, f), v in m.fuel_use.items():
        if f in traded:
            continue
        key = (m.gens[g].zone, f, m.ts.period_of(tp).label)
        if key not in prices:
            raise MissingInput(f"fuel_cost.csv has no price for zone {key[0]}, fuel {key[1]}, period {key[2]}")
        cost[tp].append((prices[key], v))
    m.add_expression("FuelCostsPerTP", {tp: linear_combine(cost[tp]) for tp in m.ts.timepoint_ids})
    m.register("cost-timepoint", "FuelCostsPerTP")
