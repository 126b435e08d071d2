"""Simple demand shifting.

``ShiftLoad[z, tp]`` (MW, either sign) moves demand between timepoints of
the same series: positive values add load. Per zone and series the
shifted energy nets to zero, no timepoint loses more than
``shift_fraction`` of its demand and none rises above ``cap_multiplier``
times its demand. Defaults are 0.10 and 1.80; per-zone values may be given
in the optional table

demand_response.csv
    load_zone, shift_fraction, cap_multiplier

Among equally cheap schedules the zero shift is chosen: upward shifts
carry a cost of 1e-6 $/MWh. When spinning reserves are modelled, the load
that could still be shed (``ShiftLoad + shift_fraction * demand``) may be
offered as ``DemandShiftSpinUp``.
"""
from __future__ import annotations

from collections import defaultdict

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_str
from ...core.output import write_table
from ...errors import InputError
from ..operating_reserves.areas import area_of

SPINNING = "balancing.operating_reserves.spinning_reserves_advanced"
TIE_BREAK_COST = 1e-6


def define_arguments(parser):
    parser.add_argument("--dr-shift-fraction", type=float, default=0.10, help="share of demand that may be moved away (default %(default)s)")
    parser.add_argument("--dr-cap-multiplier", type=float, default=1.80, help="ceiling on shifted demand as a multiple of demand (default %(default)s)")


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "demand_response", __name__, ["load_zone"], optional=True)
    data.add_foreign_key("demand_response", "load_zone", "load_zones", "load_zone")


def check_params(fraction: float, multiplier: float) -> None:
    if not 0 <= fraction <= 1:
        raise InputError(f"shift_fraction must lie in [0, 1], got {fraction}")
    if multiplier < 1:
        raise InputError(f"cap_multiplier must be at least 1, got {multiplier}")


def define_components(m):
    ts = m.ts
    frac0 = float(m.option("dr_shift_fraction", 0.10))
    mult0 = float(m.option("dr_cap_multiplier", 1.80))
    params = {z: (frac0, mult0) for z in m.zones}
    for r in m.data.rows("demand_response"):
        z = to_str(r["load_zone"])
        params[z] = (to_float(r.get("shift_fraction"), frac0), to_float(r.get("cap_multiplier"), mult0))
    for f, k in params.values():
        check_params(f, k)
    m.dr_params = params

    idx = [(z, tp) for z in m.zones for tp in ts.timepoint_ids]
    m.shift = m.add_vars(
        "ShiftLoad",
        idx,
        lower=lambda k: -params[k[0]][0] * m.demand[k],
        upper=lambda k: (params[k[0]][1] - 1.0) * m.demand[k],
    )
    up = m.add_vars("ShiftLoadUp", idx)
    for k in idx:
        m.add_constraint("ShiftLoadUp_Bound", k, up[k], ">=", m.shift[k])
    for z in m.zones:
        for series in ts.timeseries.values():
            tps = ts.tps_in_series(series.id)
            m.add_constraint(
                "DR_Energy_Neutral", (z, series.id), linear_combine((ts.duration(tp), m.shift[z, tp]) for tp in tps), "=", 0.0
            )
    m.add_expression("ShiftLoad", dict(m.shift))
    m.register("withdrawal", "ShiftLoad")
    m.add_expression(
        "DemandShiftTieBreak",
        {tp: linear_combine((TIE_BREAK_COST, up[z, tp]) for z in m.zones) for tp in ts.timepoint_ids},
    )
    m.register("cost-timepoint", "DemandShiftTieBreak")

    if m.has_module(SPINNING):
        m.dr_spin = m.add_vars("DemandShiftSpinUp", idx)
        by_area = defaultdict(list)
        for (z, tp), r in m.dr_spin.items():
            m.add_constraint("DemandShiftSpinUp_Limit", (z, tp), r, "<=", m.shift[z, tp] + params[z][0] * m.demand[z, tp])
            by_area[area_of(m, z), tp].append((1.0, r))
        m.add_expression("DemandShiftSpinUp", {k: linear_combine(v) for k, v in by_area.items()})
        m.register("injection", "DemandShiftSpinUp", family="spinning_reserve")


def post_solve(m, solution, outdir):
    rows = [[z, tp, m.demand[z, tp], solution.value(v)] for (z, tp), v in m.shift.items()]
    return [write_table(outdir, "demand_response.csv", ["load_zone", "timepoint", "demand_mw", "shift_mw"], rows)]
