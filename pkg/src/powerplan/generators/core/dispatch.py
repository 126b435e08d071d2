"""Dispatch variables shared by every operating mode.

Input tables
------------
capacity_factors.csv (needed when any project is variable)
    project, timepoint, capacity_factor
heat_rate_segments.csv (needed when any project burns fuel)
    project, segment, intercept (MMBtu/h per committed MW), slope (MMBtu/MWh)

Creates ``DispatchGen[g, tp]`` (MW injected; for storage this is the
discharge) in every timepoint where the project may have capacity, caps
variable projects at ``capacity_factor * capacity`` (anything below is
curtailment) and charges variable O&M. Fueled projects get
``FuelUse[g, tp, f]`` (MMBtu/h); how fuel use is tied to output is left to
``no_commit`` or ``commit.fuel_use``, and the limits on dispatchable
projects to ``no_commit`` or ``commit.operate``.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Tuple

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_str
from ...core.output import write_table
from ...errors import ConfigError, InputError
from .build import fuels_of, is_committed

NO_COMMIT = "generators.core.no_commit"
FUEL_USE = "generators.core.commit.fuel_use"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "capacity_factors", __name__, ["project", "timepoint", "capacity_factor"], optional=True)
    data.read_table(inputs_dir, "heat_rate_segments", __name__, ["project", "segment", "intercept", "slope"], optional=True)
    data.add_foreign_key("capacity_factors", "project", "projects", "project")
    data.add_foreign_key("capacity_factors", "timepoint", "timepoints", "timepoint")
    data.add_foreign_key("heat_rate_segments", "project", "projects", "project")


def check_segments(name: str, segments: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """Sort by slope and verify the lines form a convex lower envelope."""
    segs = sorted(segments, key=lambda s: s[1])
    for (i0, s0), (i1, s1) in zip(segs, segs[1:]):
        if i1 > i0:
            raise InputError(
                f"heat-rate segments of {name} are not a convex envelope: "
                f"intercepts must fall as slopes rise ({i0}, {s0}) -> ({i1}, {s1})"
            )
    for i, s in segs:
        if i < 0 or s < 0:
            raise InputError(f"heat-rate segment of {name} has a negative coefficient")
    return segs


def full_load_heat_rate(m, g) -> float:
    """MMBtu per MWh at full output of one committed MW."""
    return max(i + s for i, s in m.heat_rates[g])


def define_components(m):
    ts = m.ts
    m.cf = {}
    for r in m.data.rows("capacity_factors"):
        m.cf[to_str(r["project"]), to_str(r["timepoint"])] = to_float(r["capacity_factor"], what="capacity_factor")
    segs: Dict[str, list] = defaultdict(list)
    for r in m.data.rows("heat_rate_segments"):
        segs[to_str(r["project"])].append(
            (to_float(r["intercept"], what="intercept"), to_float(r["slope"], what="slope"))
        )
    m.heat_rates = {}
    for g in m.gens:
        if fuels_of(m, g):
            if not segs.get(g):
                raise InputError(f"fueled project {g} has no rows in heat_rate_segments.csv")
            m.heat_rates[g] = check_segments(g, segs[g])

    committed = [g for g in m.gens if is_committed(m, g)]
    loose = [g for g in m.gens if m.gens[g].is_dispatchable and not is_committed(m, g)]
    if loose and not m.has_module(NO_COMMIT):
        raise ConfigError(
            f"dispatchable project(s) {', '.join(loose)} have no output limit: add {NO_COMMIT} "
            f"or generators.core.commit.operate to the module list"
        )
    if any(fuels_of(m, g) for g in committed) and not m.has_module(FUEL_USE):
        raise ConfigError(f"committed fueled projects need {FUEL_USE} to link fuel use to output")

    m.dispatch = m.add_vars("DispatchGen", m.gen_tps)
    for (g, tp), v in m.dispatch.items():
        proj = m.gens[g]
        if not proj.is_variable:
            continue
        if (g, tp) not in m.cf:
            raise InputError(f"variable project {g} has no capacity_factor for timepoint {tp}")
        cf = m.cf[g, tp]
        if cf < 0:
            raise InputError(f"negative capacity factor for {g} at {tp}")
        cap = m.gen_capacity[g, ts.period_of(tp).label]
        m.add_constraint("Max_Dispatch_Variable", (g, tp), v, "<=", cf * cap)

    m.fuel_use = {}
    for g, tp in m.gen_tps:
        for f in fuels_of(m, g):
            m.fuel_use[g, tp, f] = m.add_var("FuelUse", (g, tp, f))

    inj = defaultdict(list)
    vom = defaultdict(list)
    for (g, tp), v in m.dispatch.items():
        inj[m.gens[g].zone, tp].append((1.0, v))
        vom[tp].append((m.gens[g].variable_om, v))
    m.add_expression("DispatchGen", {k: linear_combine(items) for k, items in inj.items()})
    m.add_expression("GenVariableOMCostsInTP", {tp: linear_combine(vom[tp]) for tp in ts.timepoint_ids})
    m.register("injection", "DispatchGen")
    m.register("cost-timepoint", "GenVariableOMCostsInTP")


def total_fuel_use(m, g, tp):
    return linear_combine((1.0, m.fuel_use[g, tp, f]) for f in fuels_of(m, g))


def post_solve(m, solution, outdir):
    rows = []
    for (g, tp), v in m.dispatch.items():
        fuel = solution.evaluate(total_fuel_use(m, g, tp)) if fuels_of(m, g) else 0.0
        rows.append([g, m.gens[g].zone, m.ts.period_of(tp).label, tp, solution.value(v), fuel])
    header = ["project", "load_zone", "period", "timepoint", "dispatch_mw", "fuel_mmbtu_per_h"]
    return [write_table(outdir, "dispatch.csv", header, rows)]
