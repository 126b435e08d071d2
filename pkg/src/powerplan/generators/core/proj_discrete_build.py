"""Capacity built in whole units.

For projects with ``unit_size_mw``, every ``BuildGen`` becomes
``unit_size * BuildUnits`` with ``BuildUnits`` a nonnegative integer.
"""
from __future__ import annotations


def define_components(m):
    m.build_units = {}
    for (g, p), b in m.build_gen.items():
        size = m.gens[g].unit_size
        if size is None:
            continue
        u = m.add_var("BuildUnits", (g, p), integer=True)
        m.build_units[g, p] = u
        m.add_constraint("Build_Units_Consistency", (g, p), b, "=", size * u)
