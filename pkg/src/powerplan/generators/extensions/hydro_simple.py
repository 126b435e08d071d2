"""Simple hydro: an average-flow budget per sampled series.

Input table
-----------
hydro_timeseries.csv
    project, timeseries, hydro_avg_flow_mw

For each listed project and series the average output over the series
may not exceed the average flow::

    sum_tp DispatchGen * duration <= hydro_avg_flow_mw * series_hours

Output in each timepoint is still bounded by capacity through the usual
dispatch limits.
"""
from __future__ import annotations

from ...core.expr import linear_combine
from ...core.inputs import to_float, to_str
from ...errors import InputError

required_tables = ("hydro_timeseries",)


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "hydro_timeseries", __name__, ["project", "timeseries", "hydro_avg_flow_mw"])
    data.add_foreign_key("hydro_timeseries", "project", "projects", "project")
    data.add_foreign_key("hydro_timeseries", "timeseries", "timeseries", "timeseries")


def define_components(m):
    ts = m.ts
    m.hydro_flow = {}
    for r in m.data.table("hydro_timeseries").rows:
        g, s = to_str(r["project"]), to_str(r["timeseries"])
        flow = to_float(r["hydro_avg_flow_mw"], what="hydro_avg_flow_mw")
        if flow < 0:
            raise InputError(f"negative average flow for {g} in {s}")
        if not m.gens[g].is_dispatchable:
            raise InputError(f"hydro project {g} must be dispatchable (not variable or storage)")
        m.hydro_flow[g, s] = flow
    m.hydro_gens = sorted({g for g, _ in m.hydro_flow}, key=list(m.gens).index)
    for g in m.hydro_gens:
        for s, series in ts.timeseries.items():
            tps = [tp for tp in ts.tps_in_series(s) if (g, tp) in m.dispatch]
            if not tps:
                continue
            if (g, s) not in m.hydro_flow:
                raise InputError(f"hydro project {g} has no average flow for timeseries {s}")
            energy = linear_combine((ts.duration(tp), m.dispatch[g, tp]) for tp in tps)
            m.add_constraint("Enforce_Hydro_Avg_Flow", (g, s), energy, "<=", m.hydro_flow[g, s] * series.hours)
