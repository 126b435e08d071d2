"""Linearized unit commitment.

Every dispatchable project with ``commit`` set (the default) gets
``CommitGen`` (MW online), ``StartupGenCapacity`` and
``ShutdownGenCapacity`` (MW started or stopped in the timepoint):

- ``CommitGen <= (1 - outage_derate) * capacity``
- ``min_load_fraction * CommitGen <= DispatchGen <= CommitGen``
- ``Startup - Shutdown = CommitGen[tp] - CommitGen[prev(tp)]``, circular
  within each series (from zero when the series does not wrap)
- minimum up time: capacity started within the last
  ``ceil(min_uptime_h / duration)`` timepoints must still be online;
  minimum down time likewise for capacity shut down, measured against the
  available capacity

Startup cost is ``startup_cost`` $ per MW started, booked per timepoint as
a rate (divided by the timepoint duration). When spinning reserves are
modelled, committed headroom ``CommitGen - DispatchGen`` may be offered as
``CommitGenSpinUp``.
"""
from __future__ import annotations

import math
from collections import defaultdict

from ....core.expr import LinearExpression, linear_combine
from ....balancing.operating_reserves.areas import area_of
from ...core.build import is_committed

SPINNING = "balancing.operating_reserves.spinning_reserves_advanced"


def window_length(hours: float, duration: float) -> int:
    """Whole timepoints covering ``hours`` (at least one)."""
    return max(1, math.ceil(hours / duration - 1e-9))


def define_components(m):
    ts = m.ts
    pairs = [(g, tp) for g, tp in m.gen_tps if is_committed(m, g)]
    m.committed_gens = [g for g in m.gens if is_committed(m, g)]
    m.commit = m.add_vars("CommitGen", pairs)
    m.startup = m.add_vars("StartupGenCapacity", pairs)
    m.shutdown = m.add_vars("ShutdownGenCapacity", pairs)

    def cap_online(g, tp):
        proj = m.gens[g]
        return (1.0 - proj.outage_derate) * m.gen_capacity[g, ts.period_of(tp).label]

    for g, tp in pairs:
        proj = m.gens[g]
        c, d = m.commit[g, tp], m.dispatch[g, tp]
        m.add_constraint("Commit_Upper_Limit", (g, tp), c, "<=", cap_online(g, tp))
        m.add_constraint("Enforce_Dispatch_Lower_Limit", (g, tp), d, ">=", proj.min_load_fraction * c)
        m.add_constraint("Enforce_Dispatch_Upper_Limit", (g, tp), d, "<=", c)
        prev = ts.prev(tp)
        c_prev = m.commit[g, prev] if prev is not None else LinearExpression()
        m.add_constraint(
            "Commit_StartupShutdown_Integration",
            (g, tp),
            m.startup[g, tp] - m.shutdown[g, tp],
            "=",
            c - c_prev,
        )
        dur = ts.duration(tp)
        if proj.min_uptime_h > 0:
            win = ts.window(tp, window_length(proj.min_uptime_h, dur))
            m.add_constraint(
                "Enforce_Min_Uptime", (g, tp), c, ">=", linear_combine((1.0, m.startup[g, t]) for t in win)
            )
        if proj.min_downtime_h > 0:
            win = ts.window(tp, window_length(proj.min_downtime_h, dur))
            m.add_constraint(
                "Enforce_Min_Downtime",
                (g, tp),
                cap_online(g, tp) - c,
                ">=",
                linear_combine((1.0, m.shutdown[g, t]) for t in win),
            )

    cost = defaultdict(list)
    for g, tp in pairs:
        if m.gens[g].startup_cost:
            cost[tp].append((m.gens[g].startup_cost / ts.duration(tp), m.startup[g, tp]))
    m.add_expression("GenStartupCostsInTP", {tp: linear_combine(cost[tp]) for tp in ts.timepoint_ids})
    m.register("cost-timepoint", "GenStartupCostsInTP")

    if m.has_module(SPINNING):
        m.commit_spin = m.add_vars("CommitGenSpinUp", pairs)
        by_area = defaultdict(list)
        for g, tp in pairs:
            s = m.commit_spin[g, tp]
            m.add_constraint("CommitGenSpinUp_Headroom", (g, tp), s + m.dispatch[g, tp], "<=", m.commit[g, tp])
            by_area[area_of(m, m.gens[g].zone), tp].append((1.0, s))
        m.add_expression("CommitGenSpinUp", {k: linear_combine(v) for k, v in by_area.items()})
        m.register("injection", "CommitGenSpinUp", family="spinning_reserve")
