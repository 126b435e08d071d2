"""Regional fuel markets with tiered supply curves.

Input tables
------------
zone_to_fuel_market.csv
    load_zone, fuel, market   (one market per zone and fuel)
fuel_supply_curves.csv
    market, period, tier, unit_cost ($/MMBtu), max_avail_at_cost
    (MMBtu per year; blank or ``inf`` for unlimited)

Consumption is accounted per year: fuel burned in each timepoint is
weighted up to the period and divided by its length. The tiers bought,
``ConsumeFuelTier[market, period, tier]``, must cover the annual
consumption of every zone in the market. Prices must not fall as the tier
index rises, so cheaper tiers fill first.
"""
from __future__ import annotations

import logging
from collections import defaultdict

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_str
from ...core.output import write_table
from ...errors import InputError, MissingInput

logger = logging.getLogger(__name__)

required_tables = ("zone_to_fuel_market", "fuel_supply_curves")
SIMPLE = "energy_sources.fuel_costs.simple"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "zone_to_fuel_market", __name__, ["load_zone", "fuel", "market"])
    data.read_table(inputs_dir, "fuel_supply_curves", __name__, ["market", "period", "tier", "unit_cost", "max_avail_at_cost"])
    data.add_foreign_key("zone_to_fuel_market", "load_zone", "load_zones", "load_zone")
    data.add_foreign_key("zone_to_fuel_market", "fuel", "fuels", "fuel")
    data.add_foreign_key("fuel_supply_curves", "period", "periods", "period")


def check_tiers(market, period, tiers):
    """``tiers`` is a list of (tier, price, limit) sorted by tier."""
    for (t0, p0, _), (t1, p1, _) in zip(tiers, tiers[1:]):
        if p1 < p0:
            raise InputError(
                f"supply curve of market {market} in {period} is not a supply curve: "
                f"tier {t1} price {p1} is below tier {t0} price {p0}"
            )
    for t, price, limit in tiers:
        if limit < 0:
            raise InputError(f"market {market} tier {t} has a negative limit")


def define_components(m):
    ts = m.ts
    zone_market = {}
    market_fuel = {}
    for r in m.data.table("zone_to_fuel_market").rows:
        z, f, mk = to_str(r["load_zone"]), to_str(r["fuel"]), to_str(r["market"])
        if (z, f) in zone_market:
            raise InputError(f"zone {z} is mapped to more than one {f} market")
        if market_fuel.setdefault(mk, f) != f:
            raise InputError(f"market {mk} trades more than one fuel")
        zone_market[z, f] = mk
    m.zone_fuel_market = zone_market

    tiers = defaultdict(list)
    for r in m.data.table("fuel_supply_curves").rows:
        mk = to_str(r["market"])
        if mk not in market_fuel:
            raise InputError(f"fuel_supply_curves.csv names market {mk}, which no zone uses")
        tiers[mk, to_str(r["period"])].append(
            (to_float(r["tier"], what="tier"), to_float(r["unit_cost"], what="unit_cost"), to_float(r["max_avail_at_cost"], float("inf")))
        )
    for key in tiers:
        tiers[key].sort(key=lambda t: t[0])
        check_tiers(key[0], key[1], tiers[key])
    m.supply_tiers = dict(tiers)

    traded = set(market_fuel.values())
    unpriced = sorted({f for _, _, f in m.fuel_use} - traded)
    if unpriced and not m.has_module(SIMPLE):
        logger.warning("fuel(s) %s have no market and no flat price; they are free", ", ".join(unpriced))
    consumption = defaultdict(list)
    for (g, tp, f), v in m.fuel_use.items():
        if f not in traded:
            continue
        z = m.gens[g].zone
        if (z, f) not in zone_market:
            raise MissingInput(f"zone_to_fuel_market.csv has no {f} market for zone {z}")
        p = ts.period_of(tp)
        consumption[zone_market[z, f], p.label].append((ts.weight(tp) / p.length_years, v))

    m.consume_tier = {}
    for mk in market_fuel:
        for p in ts.period_labels:
            for t, _, limit in m.supply_tiers.get((mk, p), []):
                m.consume_tier[mk, p, t] = m.add_var("ConsumeFuelTier", (mk, p, _tier_label(t)), 0.0, limit)
    m.market_consumption = {}
    for mk, p in consumption:
        if (mk, p) not in m.supply_tiers:
            raise MissingInput(f"fuel_supply_curves.csv has no tiers for market {mk} in period {p}")
    for mk, p in m.supply_tiers:
        use = linear_combine(consumption.get((mk, p), []))
        m.market_consumption[mk, p] = use
        bought = linear_combine((1.0, m.consume_tier[mk, p, t]) for t, _, _ in m.supply_tiers[mk, p])
        m.add_constraint("Fuel_Market_Balance", (mk, p), bought, ">=", use)

    cost = defaultdict(list)
    for (mk, p, t), v in m.consume_tier.items():
        price = next(pr for tt, pr, _ in m.supply_tiers[mk, p] if tt == t)
        cost[p].append((price, v))
    m.add_expression("FuelCostsPerPeriod", {p: linear_combine(cost[p]) for p in ts.period_labels})
    m.register("cost-period", "FuelCostsPerPeriod")


def _tier_label(t: float):
    return int(t) if float(t).is_integer() else t


def post_solve(m, solution, outdir):
    rows = []
    for (mk, p, t), v in m.consume_tier.items():
        rows.append([mk, p, _tier_label(t), solution.value(v)])
    return [write_table(outdir, "fuel_market_tiers.csv", ["market", "period", "tier", "mmbtu_per_year"], rows)]
