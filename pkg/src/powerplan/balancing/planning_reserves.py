"""Planning reserve margin.

In every period the credited capacity must cover the system peak demand
plus a margin::

    sum_g credit_g * capacity[g, p] >= (1 + margin) * peak_p

Input table
-----------
capacity_credits.csv (optional; required rows for variable projects)
    project, capacity_credit

Projects without a row get credit 1 (firm capacity; for storage, its
power capacity). Variable projects have no default and must be listed.
The margin comes from ``--planning-reserve-margin`` (default 0.15).
"""
from __future__ import annotations

from ..core.expr import linear_combine
from ..core.inputs import to_float, to_str
from ..errors import InputError


def define_arguments(parser):
    parser.add_argument("--planning-reserve-margin", type=float, default=0.15, help="reserve margin over peak demand (default %(default)s)")


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "capacity_credits", __name__, ["project", "capacity_credit"], optional=True)
    data.add_foreign_key("capacity_credits", "project", "projects", "project")


def requirement(peak: float, margin: float) -> float:
    if margin < 0:
        raise InputError("planning reserve margin must be nonnegative")
    return (1.0 + margin) * peak


def define_components(m):
    margin = float(m.option("planning_reserve_margin", 0.15))
    credits = {to_str(r["project"]): to_float(r["capacity_credit"], what="capacity_credit") for r in m.data.rows("capacity_credits")}
    for g, proj in m.gens.items():
        if g not in credits:
            if proj.is_variable:
                raise InputError(f"variable project {g} needs a row in capacity_credits.csv")
            credits[g] = 1.0
        if credits[g] < 0:
            raise InputError(f"capacity credit of {g} is negative")
    m.capacity_credit = credits
    m.peak_demand = {}
    for p in m.ts.periods:
        peak = max((sum(m.demand[z, tp] for z in m.zones) for tp in m.ts.tps_in_period(p)), default=0.0)
        m.peak_demand[p.label] = peak
        firm = linear_combine((credits[g], m.gen_capacity[g, p.label]) for g in m.gens)
        m.add_constraint("Planning_Reserve_Margin", p.label, firm, ">=", requirement(peak, margin))
