"""Transmission corridors between zones (transport model).

Input tables
------------
transmission_lines.csv
    line, load_zone_a, load_zone_b, existing_capacity_mw, and optionally
    efficiency (1), derate (0), life_years (40)
tx_build_costs.csv (optional)
    line, period, overnight_cost ($/MW)

One line per unordered zone pair; its capacity serves both directions.
Capacity added in a period (``BuildTx``) stays in service for the rest of
the study. ``life_years`` only sets the annuity period used to annualize
the overnight cost. Leaving this package out gives the single-zone
(copperplate) formulation.
"""
from __future__ import annotations

from dataclasses import dataclass

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_int, to_str
from ...core.output import write_table
from ...errors import DanglingZone, InputError
from ...financials import crf

required_tables = ("transmission_lines",)


@dataclass(frozen=True)
class TransmissionLine:
    name: str
    zone_a: str
    zone_b: str
    existing_mw: float
    efficiency: float = 1.0
    derate: float = 0.0
    life_years: int = 40


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "transmission_lines", __name__, ["line", "load_zone_a", "load_zone_b", "existing_capacity_mw"])
    data.read_table(inputs_dir, "tx_build_costs", __name__, ["line", "period", "overnight_cost"], optional=True)
    data.add_foreign_key("tx_build_costs", "line", "transmission_lines", "line")
    data.add_foreign_key("tx_build_costs", "period", "periods", "period")


def define_components(m):
    ts = m.ts
    m.tx_lines = {}
    pairs = set()
    for r in m.data.table("transmission_lines").rows:
        ln = TransmissionLine(
            to_str(r["line"]),
            to_str(r["load_zone_a"]),
            to_str(r["load_zone_b"]),
            to_float(r["existing_capacity_mw"], what="existing_capacity_mw"),
            to_float(r.get("efficiency"), 1.0),
            to_float(r.get("derate"), 0.0),
            to_int(r.get("life_years"), 40),
        )
        for z in (ln.zone_a, ln.zone_b):
            if z not in m.zones:
                raise DanglingZone(f"transmission line {ln.name} refers to unknown load zone {z}")
        if ln.zone_a == ln.zone_b:
            raise InputError(f"transmission line {ln.name} connects zone {ln.zone_a} to itself")
        pair = frozenset((ln.zone_a, ln.zone_b))
        if pair in pairs:
            raise InputError(f"more than one line between {ln.zone_a} and {ln.zone_b}")
        pairs.add(pair)
        if not 0 < ln.efficiency <= 1 or not 0 <= ln.derate <= 1 or ln.existing_mw < 0:
            raise InputError(f"line {ln.name}: efficiency in (0, 1], derate in [0, 1], capacity >= 0")
        if ln.name in m.tx_lines:
            raise InputError(f"duplicate transmission line {ln.name}")
        m.tx_lines[ln.name] = ln

    costs = {}
    for r in m.data.rows("tx_build_costs"):
        costs[to_str(r["line"]), to_str(r["period"])] = to_float(r["overnight_cost"], what="overnight_cost")
    m.tx_build_cost = costs
    m.build_tx = m.add_vars("BuildTx", list(costs))
    cap = {}
    for name, ln in m.tx_lines.items():
        for p in ts.periods:
            items = [
                (1.0, v) for (l, vp), v in m.build_tx.items() if l == name and ts.period(vp).start_year <= p.start_year
            ]
            cap[name, p.label] = linear_combine(items + [(1.0, ln.existing_mw)])
    m.tx_capacity = m.add_expression("TxCapacity", cap)

    rate = m.financials.interest_rate
    capital = {}
    for p in ts.periods:
        capital[p.label] = linear_combine(
            (costs[l, vp] * crf(rate, m.tx_lines[l].life_years), v)
            for (l, vp), v in m.build_tx.items()
            if ts.period(vp).start_year <= p.start_year
        )
    m.add_expression("TxCapitalCosts", capital)
    m.register("cost-period", "TxCapitalCosts")


def post_solve(m, solution, outdir):
    rows = []
    for name, ln in m.tx_lines.items():
        for p in m.ts.period_labels:
            v = m.build_tx.get((name, p))
            rows.append([name, ln.zone_a, ln.zone_b, p, solution.value(v) if v is not None else 0.0, solution.evaluate(m.tx_capacity[name, p])])
    return [write_table(outdir, "transmission_build.csv", ["line", "load_zone_a", "load_zone_b", "period", "build_mw", "capacity_mw"], rows)]
