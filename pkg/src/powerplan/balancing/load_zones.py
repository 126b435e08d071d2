"""Load zones, zonal demand and the energy balance.

Input tables
------------
load_zones.csv
    load_zone
loads.csv
    load_zone, timepoint, demand_mw  (one row per zone and timepoint)

Every module that produces or consumes power registers a named expression
indexed by (zone, timepoint) as an injection or withdrawal. Once all
modules have defined their components this module assembles, for each
zone and timepoint::

    sum(injections) - sum(withdrawals) = demand      (Energy_Balance)
"""
from __future__ import annotations

from ..core.expr import LinearExpression, linear_combine
from ..core.inputs import to_float, to_str
from ..core.output import write_table
from ..errors import ConfigError, InputError

required_tables = ("load_zones", "loads", "timepoints")

BALANCE = "Energy_Balance"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "load_zones", __name__, ["load_zone"])
    data.read_table(inputs_dir, "loads", __name__, ["load_zone", "timepoint", "demand_mw"])
    data.add_foreign_key("loads", "load_zone", "load_zones", "load_zone")
    data.add_foreign_key("loads", "timepoint", "timepoints", "timepoint")


def define_components(m):
    m.zones = [to_str(r["load_zone"]) for r in m.data.table("load_zones").rows]
    if len(set(m.zones)) != len(m.zones):
        raise InputError("duplicate load_zone in load_zones.csv")
    m.demand = {}
    for r in m.data.table("loads").rows:
        d = to_float(r["demand_mw"], what="demand_mw")
        if d < 0:
            raise InputError(f"negative demand for {r['load_zone']} at {r['timepoint']}")
        m.demand[to_str(r["load_zone"]), to_str(r["timepoint"])] = d
    missing = [(z, tp) for z in m.zones for tp in m.ts.timepoint_ids if (z, tp) not in m.demand]
    if missing:
        z, tp = missing[0]
        raise InputError(f"loads.csv has no demand for zone {z} at timepoint {tp} ({len(missing)} gaps)")


def zone_tp_sum(m, name: str, z, tp) -> LinearExpression:
    return m.expression(name).get((z, tp), LinearExpression())


def balance_lhs(m, z, tp) -> LinearExpression:
    """Net injection into zone ``z`` at ``tp`` from every registered term."""
    reg = m.registry
    items = [(1.0, zone_tp_sum(m, n, z, tp)) for n in reg.injections()]
    items += [(-1.0, zone_tp_sum(m, n, z, tp)) for n in reg.withdrawals()]
    return linear_combine(items)


def define_dynamic_components(m):
    if not m.registry.injections():
        raise ConfigError("no module registers a power injection; add a generator module or unserved load")
    for z in m.zones:
        for tp in m.ts.timepoint_ids:
            m.add_constraint(BALANCE, (z, tp), balance_lhs(m, z, tp), "=", m.demand[z, tp])


def marginal_cost(m, solution, z, tp) -> float:
    """Energy-balance dual converted from NPV per MW to $/MWh in the timepoint's year."""
    con = m.constraint_family(BALANCE)[z, tp]
    dual = solution.duals.get(con.name)
    if dual is None:
        return float("nan")
    p = m.ts.period_of(tp)
    scale = m.period_df[p.label] * m.ts.weight(tp) / p.length_years if hasattr(m, "period_df") else 1.0
    return dual / scale if scale else float("nan")


def post_solve(m, solution, outdir):
    reg = m.registry
    names = reg.injections() + reg.withdrawals()
    header = ["load_zone", "timepoint", "demand_mw"] + names + ["marginal_cost"]
    rows = []
    for z in m.zones:
        for tp in m.ts.timepoint_ids:
            vals = [solution.evaluate(zone_tp_sum(m, n, z, tp)) for n in names]
            mc = marginal_cost(m, solution, z, tp) if solution.duals else ""
            rows.append([z, tp, m.demand[z, tp]] + vals + [mc])
    return [write_table(outdir, "load_balance.csv", header, rows)]
