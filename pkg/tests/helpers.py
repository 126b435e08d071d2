"""Builders for small on-disk cases used across the test suite."""
from __future__ import annotations

import csv
import shutil
from importlib import resources
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence

from powerplan.core.modules import build_model, load_inputs, parse_module_options, post_solve
from powerplan.solver import SolverOptions, solve

HOURS_PER_YEAR = 8766

BASE_MODULES = [
    "timescales",
    "financials",
    "balancing.load_zones",
    "energy_sources.properties",
    "generators.core.build",
    "generators.core.dispatch",
]


def minigrid_source() -> Path:
    return Path(str(resources.files("powerplan") / "data" / "minigrid"))


def copy_minigrid(dest) -> Path:
    dest = Path(dest) / "minigrid"
    shutil.copytree(minigrid_source(), dest)
    return dest


def write_inputs(inputs_dir, tables: Mapping[str, Sequence[Mapping]]) -> Path:
    """Write ``{name: [row dicts]}`` as CSV files; the first row fixes the header."""
    inputs_dir = Path(inputs_dir)
    inputs_dir.mkdir(parents=True, exist_ok=True)
    for name, rows in tables.items():
        rows = list(rows)
        header: List[str] = []
        for r in rows:
            for k in r:
                if k not in header:
                    header.append(k)
        if isinstance(rows, list) and not rows and name in EMPTY_HEADERS:
            header = EMPTY_HEADERS[name]
        with open(inputs_dir / f"{name}.csv", "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                w.writerow(["" if r.get(h) is None else r.get(h) for h in header])
    return inputs_dir


EMPTY_HEADERS = {
    "gen_build_costs": ["project", "period", "overnight_cost"],
    "storage_build_costs": ["project", "period", "energy_overnight_cost"],
    "non_fuel_energy_sources": ["energy_source"],
    "fuels": ["fuel", "co2_intensity"],
    "gen_predetermined_builds": ["project", "build_year", "capacity_mw"],
    "projects": ["project", "load_zone", "energy_source", "max_age_years"],
    "fuel_cost": ["load_zone", "fuel", "period", "fuel_cost"],
}


def single_period_tables(
    period=2030,
    length_years=1,
    durations: Sequence[float] = (1.0,),
    scale: float = 1.0,
    zones: Sequence[str] = ("z",),
    base_year: Optional[int] = None,
    discount_rate: float = 0.0,
    interest_rate: float = 0.0,
    series_id: str = "s",
) -> Dict[str, list]:
    """Time and money tables for one period holding one series."""
    n = len(durations)
    assert len(set(durations)) == 1, "one duration per series"
    return {
        "periods": [{"period": str(period), "start_year": period, "length_years": length_years}],
        "timeseries": [
            {
                "timeseries": series_id,
                "period": str(period),
                "num_timepoints": n,
                "tp_duration_hours": durations[0],
                "scale_to_period": scale,
            }
        ],
        "timepoints": [{"timepoint": f"t{k}", "timeseries": series_id, "position": k} for k in range(n)],
        "financials": [
            {"base_financial_year": base_year or period, "discount_rate": discount_rate, "interest_rate": interest_rate}
        ],
        "load_zones": [{"load_zone": z} for z in zones],
    }


def build(inputs_dir, modules: Sequence[str], args: Sequence[str] = ()):
    data = load_inputs(inputs_dir, modules)
    return build_model(modules, data, parse_module_options(modules, args))


def run(inputs_dir, modules: Sequence[str], args: Sequence[str] = (), opts: Optional[SolverOptions] = None, outdir=None):
    m = build(inputs_dir, modules, args)
    sol = solve(m, opts)
    if outdir is not None:
        post_solve(m, sol, outdir, modules)
    return m, sol


def read_csv(path) -> List[Dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def discount_factor(rate: float, base_year: int, start_year: int, length_years: int) -> float:
    """Independent present-value factor: sum of 1/(1+r)^t over the period's years."""
    return sum((1.0 + rate) ** -(start_year - base_year + k) for k in range(length_years))


def npv_from_outputs(inputs_dir, outdir) -> float:
    """Re-discount the reported annual cost table using the input financials."""
    fin = read_csv(Path(inputs_dir) / "financials.csv")[0]
    periods = {r["period"]: r for r in read_csv(Path(inputs_dir) / "periods.csv")}
    total = 0.0
    for r in read_csv(Path(outdir) / "costs_by_component.csv"):
        p = periods[r["period"]]
        df = discount_factor(
            float(fin["discount_rate"]), int(fin["base_financial_year"]), int(p["start_year"]), int(float(p["length_years"]))
        )
        total += float(r["annual_cost"]) * df
    return total


def project(name, zone="z", source="gas", max_age=30, **kw):
    return {"project": name, "load_zone": zone, "energy_source": source, "max_age_years": max_age, **kw}


def existing(name, mw, year=2020, **kw):
    return {"project": name, "build_year": year, "capacity_mw": mw, **kw}


def toy_tables(demand: Mapping[str, Sequence[float]], duration: float = 1.0, scale: float = 1.0, **tables) -> Dict[str, list]:
    """One period and one series with ``demand[zone]`` per timepoint.

    Fuels, non-fuel sources and build costs default to empty tables; a
    ``gas`` fuel and a ``wind`` source are present unless overridden.
    """
    n = len(next(iter(demand.values())))
    t = single_period_tables(durations=(duration,) * n, scale=scale, zones=tuple(demand))
    t.update(
        {
            "loads": [
                {"load_zone": z, "timepoint": f"t{k}", "demand_mw": d} for z, ds in demand.items() for k, d in enumerate(ds)
            ],
            "fuels": [{"fuel": "gas", "co2_intensity": 0.053}],
            "non_fuel_energy_sources": [{"energy_source": "wind"}],
            "projects": [],
            "gen_build_costs": [],
        }
    )
    t.update(tables)
    return t


def solve_toy(tmp_path, tables, modules, args: Sequence[str] = (), opts=None, outdir=None):
    inputs = write_inputs(Path(tmp_path) / "inputs", tables)
    return run(inputs, modules, args, opts, outdir)


def priced_hours(prices: Sequence[float], demand: Sequence[float], duration: float = 1.0, scale: float = 1.0, **tables):
    """One zone whose energy costs ``prices[k]`` $/MWh in timepoint k.

    Each hour has its own 1000 MW non-fuel supply that is available only
    in that hour, so the price of energy is fixed per timepoint.
    """
    n = len(prices)
    t = toy_tables(
        {"z": demand},
        duration=duration,
        scale=scale,
        non_fuel_energy_sources=[{"energy_source": "market", "is_renewable": 0}],
        projects=[project(f"h{k}", source="market", is_variable=1, variable_om=p) for k, p in enumerate(prices)],
        gen_predetermined_builds=[existing(f"h{k}", 1000) for k in range(n)],
        capacity_factors=[
            {"project": f"h{k}", "timepoint": f"t{j}", "capacity_factor": int(j == k)} for k in range(n) for j in range(n)
        ],
    )
    for name, rows in tables.items():
        t[name] = t.get(name, []) + list(rows) if name in ("projects", "gen_predetermined_builds") else rows
    return t
