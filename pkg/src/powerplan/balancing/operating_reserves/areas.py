"""Balancing areas for operating reserves.

Input table
-----------
zone_balancing_areas.csv (optional)
    load_zone, balancing_area

Zones without a row, and every zone when this module is not used, belong
to the single area ``system``.
"""
from __future__ import annotations

from ...core.inputs import to_str

DEFAULT_AREA = "system"


def load_inputs(data, inputs_dir):
    data.read_table(inputs_dir, "zone_balancing_areas", __name__, ["load_zone", "balancing_area"], optional=True)
    data.add_foreign_key("zone_balancing_areas", "load_zone", "load_zones", "load_zone")


def zone_areas(m):
    """Zone -> area map, computed once from the loaded data."""
    cached = m.__dict__.get("zone_area")
    if cached is None:
        cached = {to_str(r["load_zone"]): to_str(r["balancing_area"]) for r in m.data.rows("zone_balancing_areas")}
        m.zone_area = cached
    return cached


def area_of(m, zone) -> str:
    return zone_areas(m).get(zone, DEFAULT_AREA)


def areas(m):
    """Areas in first-appearance order over the zone list."""
    out = []
    for z in m.zones:
        a = area_of(m, z)
        if a not in out:
            out.append(a)
    return out


def define_components(m):
    zone_areas(m)
    m.balancing_areas = areas(m)
