"""Upward spinning reserves by balancing area.

Input table
-----------
spinning_reserve_params.csv
    balancing_area, load_fraction, vre_fraction, contingency_mw

The requirement in each area and timepoint has two parts, registered as
withdrawals of the ``spinning_reserve`` family:

- regulation: ``load_fraction * load + vre_fraction * variable output``
- contingency: ``contingency_mw``

Providers register injections in the same family: committed headroom
(``commit.operate``), storage (``storage``) and demand shifting
(``demand_response.simple``). The module requires total provision to
cover the total requirement. A provider class can be restricted to some
products with ``--storage-reserve-products`` and ``--dr-reserve-products``
(comma-separated from ``regulation`` and ``contingency``, or ``none``);
the class may then supply at most the requirement of those products.
"""
from __future__ import annotations

from collections import defaultdict

from ...core.expr import LinearExpression, linear_combine
from ...core.inputs import to_float, to_str
from ...core.output import write_table
from ...errors import ConfigError, InputError
from .areas import area_of, areas

required_tables = ("spinning_reserve_params",)

FAMILY = "spinning_reserve"
PRODUCTS = ("regulation", "contingency")
REQUIREMENT = {"regulation": "RegulationRequirement", "contingency": "ContingencyRequirement"}
# provider class -> (registered injection, option name)
RESTRICTED_CLASSES = {
    "storage": ("StorageSpinUp", "storage_reserve_products"),
    "demand_response": ("DemandShiftSpinUp", "dr_reserve_products"),
}


def define_arguments(parser):
    for cls, (_, opt) in RESTRICTED_CLASSES.items():
        parser.add_argument(
            "--" + opt.replace("_", "-"),
            default="regulation,contingency",
            help=f"reserve products {cls} may provide: comma list of {PRODUCTS} or 'none' (default %(default)s)",
        )


def parse_products(text) -> tuple:
    text = (text or "").strip().lower()
    if text in ("", "none"):
        return ()
    items = tuple(p.strip() for p in text.split(",") if p.strip())
    bad = [p for p in items if p not in PRODUCTS]
    if bad:
        raise ConfigError(f"unknown reserve product(s) {bad}; choose from {PRODUCTS}")
    return tuple(p for p in PRODUCTS if p in items)


def load_inputs(data, inputs_dir):
    data.read_table(
        inputs_dir, "spinning_reserve_params", __name__, ["balancing_area", "load_fraction", "vre_fraction", "contingency_mw"]
    )


def define_components(m):
    ts = m.ts
    params = {}
    for r in m.data.table("spinning_reserve_params").rows:
        vals = tuple(to_float(r[c], what=c) for c in ("load_fraction", "vre_fraction", "contingency_mw"))
        if min(vals) < 0:
            raise InputError(f"reserve parameters for {r['balancing_area']} must be nonnegative")
        params[to_str(r["balancing_area"])] = vals
    m.reserve_areas = areas(m)
    for a in m.reserve_areas:
        if a not in params:
            raise InputError(f"spinning_reserve_params.csv has no row for balancing area {a}")
    if not any(v > 0 for a in m.reserve_areas for v in params[a]):
        raise InputError("all spinning reserve coefficients are zero")
    m.reserve_params = params

    vre = defaultdict(list)
    for (g, tp), v in m.__dict__.get("dispatch", {}).items():
        if m.gens[g].is_variable:
            vre[area_of(m, m.gens[g].zone), tp].append((1.0, v))
    reg, cont = {}, {}
    for a in m.reserve_areas:
        lf, vf, cmw = params[a]
        zones = [z for z in m.zones if area_of(m, z) == a]
        for tp in ts.timepoint_ids:
            load = sum(m.demand[z, tp] for z in zones)
            reg[a, tp] = linear_combine([(lf, load)] + [(vf * k, v) for k, v in vre[a, tp]])
            cont[a, tp] = LinearExpression(constant=cmw)
    m.add_expression("RegulationRequirement", reg)
    m.add_expression("ContingencyRequirement", cont)
    m.register("withdrawal", "RegulationRequirement", family=FAMILY)
    m.register("withdrawal", "ContingencyRequirement", family=FAMILY)


def _sum(m, names, a, tp):
    return linear_combine((1.0, m.expression(n).get((a, tp), LinearExpression())) for n in names)


def define_dynamic_components(m):
    reg = m.registry
    providers = reg.injections(FAMILY)
    if not providers:
        raise ConfigError(
            "spinning reserves need a provider: add generators.core.commit.operate, "
            "generators.extensions.storage or balancing.demand_response.simple"
        )
    m.reserve_product_rights = {}
    for cls, (name, opt) in RESTRICTED_CLASSES.items():
        if name in providers:
            m.reserve_product_rights[cls] = parse_products(m.option(opt, "regulation,contingency"))
    for a in m.reserve_areas:
        for tp in m.ts.timepoint_ids:
            m.add_constraint(
                "Satisfy_Spinning_Reserve_Up", (a, tp), _sum(m, providers, a, tp), ">=", _sum(m, reg.withdrawals(FAMILY), a, tp)
            )
            for cls, products in m.reserve_product_rights.items():
                if len(products) == len(PRODUCTS):
                    continue
                name = RESTRICTED_CLASSES[cls][0]
                cap = _sum(m, [REQUIREMENT[p] for p in products], a, tp)
                m.add_constraint(f"Limit_{name}_Products", (a, tp), _sum(m, [name], a, tp), "<=", cap)


def post_solve(m, solution, outdir):
    reg = m.registry
    names = reg.withdrawals(FAMILY) + reg.injections(FAMILY)
    rows = []
    for a in m.reserve_areas:
        for tp in m.ts.timepoint_ids:
            rows.append([a, tp] + [solution.evaluate(_sum(m, [n], a, tp)) for n in names])
    return [write_table(outdir, "spinning_reserves.csv", ["balancing_area", "timepoint"] + names, rows)]
