"""Generation projects and capacity investment.

Input tables
------------
projects.csv
    project, load_zone, energy_source, max_age_years, and optionally
    is_variable (0), fixed_om ($/MW-yr, 0), variable_om ($/MWh, 0),
    outage_derate (0), unit_size_mw, min_load_fraction (0),
    startup_cost ($/MW started, 0), startup_fuel (MMBtu/MW started, 0),
    min_uptime_h (0), min_downtime_h (0), capacity_limit_mw (inf),
    commit (1: take part in unit commitment when that module is active)
gen_build_costs.csv
    project, period, overnight_cost ($/MW). A project can only be built in
    the periods listed here.
gen_predetermined_builds.csv (optional)
    project, build_year, capacity_mw, energy_mwh (storage only, optional)

A project is a stack of similar units in one zone. Capacity built in a
period (vintage year = the period's start year) or predetermined in
``build_year`` is available in every period that starts before the
vintage reaches ``max_age_years``. New capacity pays its overnight cost as
an annuity over ``max_age_years`` at the interest rate for every year it
is in service; all installed capacity pays fixed O&M.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ...core.expr import LinearExpression, linear_combine
from ...core.inputs import is_blank, to_bool, to_float, to_int, to_str
from ...core.output import write_table
from ...energy_sources.properties import ELECTRICITY
from ...errors import ConfigError, InputError
from ...financials import crf

required_tables = ("projects", "gen_build_costs", "load_zones", "fuels", "periods", "timepoints")

COMMIT_MODULE = "generators.core.commit.operate"
STORAGE_MODULE = "generators.extensions.storage"


@dataclass(frozen=True)
class GenerationProject:
    name: str
    zone: str
    energy_sources: Tuple[str, ...]
    max_age: int
    is_variable: bool = False
    fixed_om: float = 0.0
    variable_om: float = 0.0
    outage_derate: float = 0.0
    unit_size: Optional[float] = None
    min_load_fraction: float = 0.0
    startup_cost: float = 0.0
    startup_fuel: float = 0.0
    min_uptime_h: float = 0.0
    min_downtime_h: float = 0.0
    capacity_limit: float = math.inf
    commit: bool = True

    @property
    def is_storage(self) -> bool:
        return self.energy_sources == (ELECTRICITY,)

    @property
    def is_dispatchable(self) -> bool:
        """Controllable output that is neither weather-driven nor storage."""
        return not self.is_variable and not self.is_storage


def is_active(vintage_year: float, max_age: float, period_start: float) -> bool:
    """A vintage serves periods starting in [vintage_year, vintage_year + max_age)."""
    return vintage_year <= period_start < vintage_year + max_age


def available_capacity(builds: Dict[float, float], max_age: float, period_start: float) -> float:
    """MW in service at ``period_start`` given builds by vintage year."""
    return sum(mw for v, mw in builds.items() if is_active(v, max_age, period_start))


def project_from_row(r) -> GenerationProject:
    name = to_str(r["project"])
    unit = r.get("unit_size_mw")
    p = GenerationProject(
        name=name,
        zone=to_str(r["load_zone"]),
        energy_sources=tuple(s.strip() for s in to_str(r["energy_source"]).split(";") if s.strip()),
        max_age=to_int(r["max_age_years"], what=f"max_age_years of {name}"),
        is_variable=to_bool(r.get("is_variable"), False),
        fixed_om=to_float(r.get("fixed_om"), 0.0),
        variable_om=to_float(r.get("variable_om"), 0.0),
        outage_derate=to_float(r.get("outage_derate"), 0.0),
        unit_size=None if is_blank(unit) else to_float(unit),
        min_load_fraction=to_float(r.get("min_load_fraction"), 0.0),
        startup_cost=to_float(r.get("startup_cost"), 0.0),
        startup_fuel=to_float(r.get("startup_fuel"), 0.0),
        min_uptime_h=to_float(r.get("min_uptime_h"), 0.0),
        min_downtime_h=to_float(r.get("min_downtime_h"), 0.0),
        capacity_limit=to_float(r.get("capacity_limit_mw"), math.inf),
        commit=to_bool(r.get("commit"), True),
    )
    if not p.energy_sources:
        raise InputError(f"project {name} has no energy_source")
    if p.max_age < 1:
        raise InputError(f"project {name} needs max_age_years >= 1")
    if not 0 <= p.outage_derate <= 1 or not 0 <= p.min_load_fraction <= 1:
        raise InputError(f"project {name}: outage_derate and min_load_fraction must lie in [0, 1]")
    if p.unit_size is not None and not p.unit_size > 0:
        raise InputError(f"project {name}: unit_size_mw must be positive")
    for f in ("startup_cost", "startup_fuel", "min_uptime_h", "min_downtime_h", "capacity_limit"):
        if getattr(p, f) < 0:
            raise InputError(f"project {name}: {f} must be nonnegative")
    if ELECTRICITY in p.energy_sources and len(p.energy_sources) > 1:
        raise InputError(f"project {name}: storage cannot also burn fuel")
    return p


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "projects", __name__, ["project", "load_zone", "energy_source", "max_age_years"])
    data.read_table(inputs_dir, "gen_build_costs", __name__, ["project", "period", "overnight_cost"])
    data.read_table(
        inputs_dir, "gen_predetermined_builds", __name__, ["project", "build_year", "capacity_mw"], optional=True
    )
    data.add_foreign_key("projects", "load_zone", "load_zones", "load_zone")
    data.add_foreign_key("gen_build_costs", "project", "projects", "project")
    data.add_foreign_key("gen_build_costs", "period", "periods", "period")
    data.add_foreign_key("gen_predetermined_builds", "project", "projects", "project")


def is_committed(m, g) -> bool:
    """Whether ``g`` is scheduled by the unit-commitment modules in this run."""
    p = m.gens[g]
    return p.is_dispatchable and p.commit and m.has_module(COMMIT_MODULE)


def fuels_of(m, g) -> Tuple[str, ...]:
    return tuple(f for f in m.gens[g].energy_sources if f in m.fuels)


def define_components(m):
    m.gens: Dict[str, GenerationProject] = {}
    for r in m.data.table("projects").rows:
        p = project_from_row(r)
        if p.name in m.gens:
            raise InputError(f"duplicate project {p.name}")
        if p.zone not in m.zones:
            raise InputError(f"project {p.name} is in unknown zone {p.zone}")
        for s in p.energy_sources:
            if s != ELECTRICITY and s not in m.fuels and s not in m.non_fuel_sources:
                raise InputError(f"project {p.name} uses unknown energy source {s}")
        if p.is_storage and not m.has_module(STORAGE_MODULE):
            raise ConfigError(f"project {p.name} is storage but {STORAGE_MODULE} is not in the module list")
        m.gens[p.name] = p

    m.gen_build_cost: Dict[Tuple[str, str], float] = {}
    for r in m.data.table("gen_build_costs").rows:
        key = (to_str(r["project"]), to_str(r["period"]))
        if key in m.gen_build_cost:
            raise InputError(f"duplicate build cost for {key}")
        m.gen_build_cost[key] = to_float(r["overnight_cost"], what="overnight_cost")

    m.gen_predetermined: Dict[str, List[Tuple[int, float, float]]] = {g: [] for g in m.gens}
    for r in m.data.rows("gen_predetermined_builds"):
        g = to_str(r["project"])
        m.gen_predetermined[g].append(
            (to_int(r["build_year"], what="build_year"), to_float(r["capacity_mw"], what="capacity_mw"), to_float(r.get("energy_mwh"), 0.0))
        )

    ts = m.ts
    build = m.add_vars("BuildGen", list(m.gen_build_cost))
    m.build_gen = build
    cap = {}
    for g, proj in m.gens.items():
        for p in ts.periods:
            const = sum(mw for y, mw, _ in m.gen_predetermined[g] if is_active(y, proj.max_age, p.start_year))
            items = [
                (1.0, v)
                for (gg, vp), v in build.items()
                if gg == g and is_active(ts.period(vp).start_year, proj.max_age, p.start_year)
            ]
            cap[g, p.label] = linear_combine(items + [(1.0, const)])
    m.gen_capacity = m.add_expression("GenCapacity", cap)
    # (g, p) pairs where any capacity could be in service
    m.gen_periods = [k for k, e in cap.items() if len(e) or e.constant > 0]
    m.gen_tps = [(g, tp) for g, p in m.gen_periods for tp in ts.tps_in_period(p)]

    for g, proj in m.gens.items():
        if math.isfinite(proj.capacity_limit):
            for p in ts.period_labels:
                if len(cap[g, p]):
                    m.add_constraint("Max_Build_Potential", (g, p), cap[g, p], "<=", proj.capacity_limit)

    rate = m.financials.interest_rate
    capital, fixed = {}, {}
    for p in ts.periods:
        items = []
        for (g, vp), v in build.items():
            if is_active(ts.period(vp).start_year, m.gens[g].max_age, p.start_year):
                items.append((m.gen_build_cost[g, vp] * crf(rate, m.gens[g].max_age), v))
        capital[p.label] = linear_combine(items)
        fixed[p.label] = linear_combine((m.gens[g].fixed_om, cap[g, p.label]) for g in m.gens)
    m.add_expression("GenCapitalCosts", capital)
    m.add_expression("GenFixedOMCosts", fixed)
    m.register("cost-period", "GenCapitalCosts")
    m.register("cost-period", "GenFixedOMCosts")


def post_solve(m, solution, outdir):
    rows = []
    for g in m.gens:
        for p in m.ts.period_labels:
            v = m.build_gen.get((g, p))
            rows.append([g, m.gens[g].zone, p, solution.value(v) if v is not None else 0.0, solution.evaluate(m.gen_capacity[g, p])])
    return [write_table(outdir, "gen_build.csv", ["project", "load_zone", "period", "build_mw", "capacity_mw"], rows)]
