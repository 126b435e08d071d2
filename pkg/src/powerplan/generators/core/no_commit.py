"""Simple economic dispatch for projects outside unit commitment.

Output of each uncommitted dispatchable project is capped at
``(1 - outage_derate) * capacity``. Without a commitment variable there is
nothing to multiply heat-rate intercepts by, so fuel use follows the slope
of the project's first (flattest) heat-rate segment.
"""
from __future__ import annotations

from ...core.expr import linear_combine
from .build import fuels_of, is_committed


def uncommitted(m):
    return [g for g in m.gens if m.gens[g].is_dispatchable and not is_committed(m, g)]


def define_components(m):
    loose = set(uncommitted(m))
    for (g, tp), v in m.dispatch.items():
        if g not in loose:
            continue
        proj = m.gens[g]
        cap = m.gen_capacity[g, m.ts.period_of(tp).label]
        m.add_constraint("Max_Dispatch", (g, tp), v, "<=", (1.0 - proj.outage_derate) * cap)
        if fuels_of(m, g):
            slope = m.heat_rates[g][0][1]
            fuel = linear_combine((1.0, m.fuel_use[g, tp, f]) for f in fuels_of(m, g))
            m.add_constraint("ProjFuelUseRate", (g, tp), fuel, ">=", slope * v)
