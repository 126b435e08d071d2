"""Multi-segment fuel use for committed projects.

For every heat-rate segment ``s`` of a committed fueled project::

    sum_f FuelUse[g, tp, f] >= intercept_s * CommitGen + slope_s * DispatchGen
                               + startup_fuel * StartupGenCapacity / duration

The segments form a convex envelope, so under a positive fuel price the
fuel burned equals the highest line. Projects that burn several fuels
split their use freely among them.
"""
from __future__ import annotations

from ....core.expr import linear_combine
from ...core.build import fuels_of
from ...core.dispatch import total_fuel_use


def define_components(m):
    ts = m.ts
    for (g, tp), c in m.commit.items():
        if not fuels_of(m, g):
            continue
        fuel = total_fuel_use(m, g, tp)
        start = m.gens[g].startup_fuel / ts.duration(tp)
        for k, (intercept, slope) in enumerate(m.heat_rates[g]):
            need = linear_combine([(intercept, c), (slope, m.dispatch[g, tp]), (start, m.startup[g, tp])])
            m.add_constraint("GenFuelUseRate_Calculate", (g, tp, k), fuel, ">=", need)
