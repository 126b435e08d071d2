"""Commitment in whole units.

For committed projects with ``unit_size_mw``, ``CommitGen`` becomes
``unit_size * CommitUnits`` with ``CommitUnits`` integer and no more than
the units in service.
"""
from __future__ import annotations


def define_components(m):
    ts = m.ts
    m.commit_units = {}
    for (g, tp), c in m.commit.items():
        size = m.gens[g].unit_size
        if size is None:
            continue
        u = m.add_var("CommitUnits", (g, tp), integer=True)
        m.commit_units[g, tp] = u
        m.add_constraint("Commit_Units_Consistency", (g, tp), c, "=", size * u)
        units_in_service = m.gen_capacity[g, ts.period_of(tp).label] / size
        m.add_constraint("Commit_Units_Limit", (g, tp), u, "<=", units_in_service)
