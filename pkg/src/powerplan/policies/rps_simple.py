"""Simple renewable portfolio standard.

Input table
-----------
rps_targets.csv
    period, rps_target  (fraction of demand energy)

In each period with a target::

    renewable energy >= rps_target * total zonal demand energy

Renewable energy is the output of projects whose energy source is a
renewable non-fuel source, plus the output of fueled projects credited
in proportion to the renewable fuels they burn (fuel use divided by the
project's full-load heat rate). Storage output is not counted, so its
losses never help or hurt compliance.
"""
from __future__ import annotations

from ..core.expr import linear_combine
from ..core.inputs import to_float, to_str
from ..core.output import write_table
from ..errors import InputError
from ..generators.core.dispatch import full_load_heat_rate

required_tables = ("rps_targets",)


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "rps_targets", __name__, ["period", "rps_target"])
    data.add_foreign_key("rps_targets", "period", "periods", "period")


def renewable_energy(m, period):
    """MWh of qualifying output over ``period``."""
    ts = m.ts
    items = []
    for (g, tp), v in m.dispatch.items():
        if ts.period_of(tp).label != period:
            continue
        proj = m.gens[g]
        if not proj.is_storage and all(m.non_fuel_sources.get(s, False) for s in proj.energy_sources):
            items.append((ts.weight(tp), v))
    for (g, tp, f), v in m.fuel_use.items():
        if ts.period_of(tp).label == period and m.fuels[f].is_renewable:
            items.append((ts.weight(tp) / full_load_heat_rate(m, g), v))
    return linear_combine(items)


def demand_energy(m, period) -> float:
    ts = m.ts
    return sum(m.demand[z, tp] * ts.weight(tp) for z in m.zones for tp in ts.tps_in_period(period))


def define_components(m):
    m.rps_target = {}
    for r in m.data.table("rps_targets").rows:
        p, t = to_str(r["period"]), to_float(r["rps_target"], what="rps_target")
        if not 0 <= t <= 1:
            raise InputError(f"rps_target for {p} must lie in [0, 1], got {t}")
        m.rps_target[p] = t
    m.rps_energy = {}
    for p in m.ts.period_labels:
        if p not in m.rps_target:
            continue
        m.rps_energy[p] = renewable_energy(m, p)
        m.add_constraint("RPS_Enforce_Target", p, m.rps_energy[p], ">=", m.rps_target[p] * demand_energy(m, p))


def post_solve(m, solution, outdir):
    rows = []
    for p, expr in m.rps_energy.items():
        d = demand_energy(m, p)
        got = solution.evaluate(expr)
        rows.append([p, m.rps_target[p], got, d, got / d if d else 0.0])
    return [write_table(outdir, "rps.csv", ["period", "target", "renewable_mwh", "demand_mwh", "share"], rows)]
