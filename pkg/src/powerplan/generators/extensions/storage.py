"""Storage with separately sized power and energy.

Input tables
------------
storage.csv
    project, charge_efficiency, discharge_efficiency, and optionally
    max_cycles_per_year, can_provide_reserves (1), energy_fixed_om
    ($/MWh-yr, 0)
storage_build_costs.csv
    project, period, energy_overnight_cost ($/MWh)

Storage projects appear in ``projects.csv`` with energy source
``electricity``; their power capacity, build costs and ``DispatchGen``
(discharge) come from the generator modules. This module adds the energy
side: ``BuildStorageEnergy[g, p]`` (MWh), ``ChargeStorage[g, tp]`` (MW
withdrawn) and ``StateOfCharge[g, tp]`` (MWh at the end of the timepoint)::

    SOC[tp] = SOC[prev] + charge_eff * Charge * dur - Discharge / discharge_eff * dur

circular within each series. Charge and discharge are limited by power
capacity and SOC by energy capacity. With ``max_cycles_per_year`` the
annual discharge is at most that many full energy capacities.

When spinning reserves are modelled, ``StorageSpinUp`` offers the extra
discharge the device could deliver for one timepoint: no more than the
unused power range (capacity - discharge + charge) and no more than the
stored energy can sustain.
"""
from __future__ import annotations

from collections import defaultdict

from ...balancing.operating_reserves.areas import area_of
from ...core.expr import LinearExpression, linear_combine
from ...core.inputs import to_bool, to_float, to_str
from ...core.output import write_table
from ...errors import InputError, MissingEnergyCost
from ...financials import crf
from ..core.build import is_active

required_tables = ("storage", "storage_build_costs")

SPINNING = "balancing.operating_reserves.spinning_reserves_advanced"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "storage", __name__, ["project", "charge_efficiency", "discharge_efficiency"])
    data.read_table(inputs_dir, "storage_build_costs", __name__, ["project", "period", "energy_overnight_cost"])
    data.add_foreign_key("storage", "project", "projects", "project")
    data.add_foreign_key("storage_build_costs", "project", "storage", "project")
    data.add_foreign_key("storage_build_costs", "period", "periods", "period")


def define_components(m):
    ts = m.ts
    m.storage = {}
    for r in m.data.table("storage").rows:
        g = to_str(r["project"])
        ce = to_float(r["charge_efficiency"], what="charge_efficiency")
        de = to_float(r["discharge_efficiency"], what="discharge_efficiency")
        if not (0 < ce <= 1 and 0 < de <= 1):
            raise InputError(f"storage {g}: efficiencies must lie in (0, 1]")
        cycles = to_float(r.get("max_cycles_per_year"), float("inf"))
        m.storage[g] = {
            "charge_eff": ce,
            "discharge_eff": de,
            "max_cycles": cycles,
            "reserves": to_bool(r.get("can_provide_reserves"), True),
            "energy_fixed_om": to_float(r.get("energy_fixed_om"), 0.0),
        }
    for g, proj in m.gens.items():
        if proj.is_storage and g not in m.storage:
            raise InputError(f"storage project {g} has no row in storage.csv")
        if g in m.storage and not proj.is_storage:
            raise InputError(f"{g} is in storage.csv but its energy_source is not 'electricity'")

    m.storage_energy_cost = {}
    for r in m.data.table("storage_build_costs").rows:
        key = (to_str(r["project"]), to_str(r["period"]))
        m.storage_energy_cost[key] = to_float(r["energy_overnight_cost"], what="energy_overnight_cost")
    for g, p in m.gen_build_cost:
        if g in m.storage and (g, p) not in m.storage_energy_cost:
            raise MissingEnergyCost(f"storage project {g} can be built in {p} but has no energy cost row")

    build = m.add_vars("BuildStorageEnergy", [k for k in m.gen_build_cost if k[0] in m.storage])
    m.build_storage_energy = build
    energy_cap = {}
    for g in m.storage:
        age = m.gens[g].max_age
        for p in ts.periods:
            const = sum(e for y, _, e in m.gen_predetermined[g] if is_active(y, age, p.start_year))
            items = [(1.0, v) for (gg, vp), v in build.items() if gg == g and is_active(ts.period(vp).start_year, age, p.start_year)]
            energy_cap[g, p.label] = linear_combine(items + [(1.0, const)])
    m.storage_energy_capacity = m.add_expression("StorageEnergyCapacity", energy_cap)

    pairs = [(g, tp) for g, tp in m.gen_tps if g in m.storage]
    m.charge = m.add_vars("ChargeStorage", pairs)
    m.soc = m.add_vars("StateOfCharge", pairs)
    for g, tp in pairs:
        prm = m.storage[g]
        p = ts.period_of(tp).label
        power = m.gen_capacity[g, p]
        dur = ts.duration(tp)
        d, c, s = m.dispatch[g, tp], m.charge[g, tp], m.soc[g, tp]
        m.add_constraint("Storage_Discharge_Limit", (g, tp), d, "<=", power)
        m.add_constraint("Storage_Charge_Limit", (g, tp), c, "<=", power)
        m.add_constraint("State_Of_Charge_Upper_Limit", (g, tp), s, "<=", energy_cap[g, p])
        prev = ts.prev(tp)
        s_prev = m.soc[g, prev] if prev is not None else LinearExpression()
        flow = linear_combine([(prm["charge_eff"] * dur, c), (-dur / prm["discharge_eff"], d)])
        m.add_constraint("Track_State_Of_Charge", (g, tp), s, "=", s_prev + flow)

    for g in m.storage:
        cycles = m.storage[g]["max_cycles"]
        if cycles == float("inf"):
            continue
        for p in ts.periods:
            tps = [tp for tp in ts.tps_in_period(p) if (g, tp) in m.charge]
            if not tps:
                continue
            annual = linear_combine((ts.weight(tp) / p.length_years, m.dispatch[g, tp]) for tp in tps)
            m.add_constraint("Storage_Cycle_Limit", (g, p.label), annual, "<=", cycles * energy_cap[g, p.label])

    wd = defaultdict(list)
    for (g, tp), c in m.charge.items():
        wd[m.gens[g].zone, tp].append((1.0, c))
    m.add_expression("ChargeStorage", {k: linear_combine(v) for k, v in wd.items()})
    m.register("withdrawal", "ChargeStorage")

    rate = m.financials.interest_rate
    costs = {}
    for p in ts.periods:
        items = []
        for (g, vp), v in build.items():
            if is_active(ts.period(vp).start_year, m.gens[g].max_age, p.start_year):
                items.append((m.storage_energy_cost[g, vp] * crf(rate, m.gens[g].max_age), v))
        items += [(m.storage[g]["energy_fixed_om"], energy_cap[g, p.label]) for g in m.storage]
        costs[p.label] = linear_combine(items)
    m.add_expression("StorageEnergyFixedCosts", costs)
    m.register("cost-period", "StorageEnergyFixedCosts")

    if m.has_module(SPINNING):
        m.storage_spin = m.add_vars("StorageSpinUp", [(g, tp) for g, tp in pairs if m.storage[g]["reserves"]])
        by_area = defaultdict(list)
        for (g, tp), r in m.storage_spin.items():
            p = ts.period_of(tp).label
            d, c, s = m.dispatch[g, tp], m.charge[g, tp], m.soc[g, tp]
            m.add_constraint("StorageSpinUp_Power", (g, tp), r + d - c, "<=", m.gen_capacity[g, p])
            m.add_constraint(
                "StorageSpinUp_Energy", (g, tp), r, "<=", s * (m.storage[g]["discharge_eff"] / ts.duration(tp))
            )
            by_area[area_of(m, m.gens[g].zone), tp].append((1.0, r))
        m.add_expression("StorageSpinUp", {k: linear_combine(v) for k, v in by_area.items()})
        m.register("injection", "StorageSpinUp", family="spinning_reserve")


def post_solve(m, solution, outdir):
    rows = []
    for (g, tp), c in m.charge.items():
        rows.append([g, m.ts.period_of(tp).label, tp, solution.value(m.dispatch[g, tp]), solution.value(c), solution.value(m.soc[g, tp])])
    paths = [write_table(outdir, "storage_dispatch.csv", ["project", "period", "timepoint", "discharge_mw", "charge_mw", "soc_mwh"], rows)]
    cap_rows = [
        [g, p, solution.evaluate(m.gen_capacity[g, p]), solution.evaluate(m.storage_energy_capacity[g, p])]
        for g in m.storage
        for p in m.ts.period_labels
    ]
    paths.append(write_table(outdir, "storage_capacity.csv", ["project", "period", "power_mw", "energy_mwh"], cap_rows))
    return paths
