import logging

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import BASE_MODULES, build, existing, project, solve_toy, toy_tables, write_inputs
from powerplan.energy_sources.fuel_costs.markets import check_tiers
from powerplan.energy_sources.properties import annual_emissions
from powerplan.errors import ConfigError, InputError, MissingInput

NO_COMMIT = BASE_MODULES + ["generators.core.no_commit"]
SIMPLE = NO_COMMIT + ["energy_sources.fuel_costs.simple"]
MARKETS = NO_COMMIT + ["energy_sources.fuel_costs.markets"]
INF = float("inf")


def fueled(demand, source="gas", slope=10.0, fuels=(("gas", 0.053),), **extra):
    """One fueled project with a flat heat rate of ``slope`` MMBtu/MWh."""
    return toy_tables(
        {"z": demand},
        fuels=[{"fuel": f, "co2_intensity": c} for f, c in fuels],
        projects=[project("g", source=source)],
        gen_predetermined_builds=[existing("g", 1000)],
        heat_rate_segments=[{"project": "g", "segment": 0, "intercept": 0, "slope": slope}],
        **extra,
    )


def flat_price(price, fuel="gas"):
    return [{"load_zone": "z", "fuel": fuel, "period": "2030", "fuel_cost": price}]


def market(name, fuel, tiers):
    """``tiers`` is a list of (price, limit)."""
    return {
        "zone_to_fuel_market": [{"load_zone": "z", "fuel": fuel, "market": name}],
        "fuel_supply_curves": [
            {"market": name, "period": "2030", "tier": k, "unit_cost": p, "max_avail_at_cost": "" if lim == INF else lim}
            for k, (p, lim) in enumerate(tiers)
        ],
    }


def test_flat_price(tmp_path):
    _, sol = solve_toy(tmp_path, fueled([60], fuel_cost=flat_price(5)), SIMPLE)
    assert sol.objective == pytest.approx(60 * 10 * 5)


def test_flat_price_missing(tmp_path):
    with pytest.raises(MissingInput, match="fuel_cost"):
        build(write_inputs(tmp_path, fueled([60], fuel_cost=[])), SIMPLE)


def test_emissions_booked(tmp_path):
    m, sol = solve_toy(tmp_path, fueled([100], fuel_cost=flat_price(5)), SIMPLE)
    assert sol.evaluate(annual_emissions(m)["2030"]) == pytest.approx(53)


def test_tiers_fill_cheapest_first(tmp_path):
    """120 MMBtu a year against 100 at $2 then unlimited at $3."""
    m, sol = solve_toy(tmp_path, fueled([12], **market("hub", "gas", [(2, 100), (3, INF)])), MARKETS)
    assert sol.objective == pytest.approx(100 * 2 + 20 * 3)
    assert [sol.value(v) for v in m.consume_tier.values()] == pytest.approx([100, 20])


def test_small_demand_stays_in_first_tier(tmp_path):
    m, sol = solve_toy(tmp_path, fueled([5], **market("hub", "gas", [(2, 100), (3, INF)])), MARKETS)
    assert [sol.value(v) for v in m.consume_tier.values()] == pytest.approx([50, 0])


def test_market_consumption_is_annualized(tmp_path):
    """Two 2-hour timepoints scaled by 10 make 40 hours per year."""
    t = fueled([1, 2], **market("hub", "gas", [(2, INF)]))
    t = {**t, **{k: v for k, v in toy_tables({"z": [1, 2]}, duration=2, scale=10).items() if k in ("timeseries",)}}
    m, sol = solve_toy(tmp_path, t, MARKETS)
    assert sol.evaluate(m.market_consumption["hub", "2030"]) == pytest.approx((1 + 2) * 10 * 2 * 10)


def test_nonmonotone_tiers_rejected(tmp_path):
    with pytest.raises(InputError, match="not a supply curve"):
        build(write_inputs(tmp_path, fueled([1], **market("hub", "gas", [(3, 100), (2, INF)]))), MARKETS)


@given(st.lists(st.tuples(st.floats(0, 100), st.floats(0, 1e3)), min_size=1, max_size=5))
def test_sorted_prices_always_accepted(tiers):
    check_tiers("m", "p", [(k, p, lim) for k, (p, lim) in enumerate(sorted(tiers))])


def test_zone_without_market(tmp_path):
    t = fueled([1], **market("hub", "gas", [(2, INF)]))
    t.update({k: v for k, v in toy_tables({"z": [1], "far": [0]}).items() if k in ("load_zones", "loads")})
    t["projects"] = [project("g", zone="far")]
    with pytest.raises(MissingInput, match="no gas market for zone far"):
        build(write_inputs(tmp_path, t), MARKETS)


def test_unpriced_fuel_warns(tmp_path, caplog):
    t = fueled([1], fuels=(("gas", 0.053), ("oil", 0.07)), source="oil", **market("hub", "gas", [(2, INF)]))
    with caplog.at_level(logging.WARNING):
        build(write_inputs(tmp_path, t), MARKETS)
    assert "oil" in caplog.text and "free" in caplog.text


def test_fuel_priced_twice(tmp_path):
    t = fueled([1], fuel_cost=flat_price(5), **market("hub", "gas", [(2, INF)]))
    with pytest.raises(ConfigError, match="both flat prices and a market"):
        build(write_inputs(tmp_path, t), MARKETS + ["energy_sources.fuel_costs.simple"])


def test_dual_fuel_exhausts_cheap_capped_fuel(tmp_path):
    """150 MMBtu needed; A costs $1 but only 100 exist, B costs $4."""
    t = fueled([15], source="a;b", fuels=(("a", 0.05), ("b", 0.07)))
    ma, mb = market("ma", "a", [(1, 100)]), market("mb", "b", [(4, INF)])
    t["zone_to_fuel_market"] = ma["zone_to_fuel_market"] + mb["zone_to_fuel_market"]
    t["fuel_supply_curves"] = ma["fuel_supply_curves"] + mb["fuel_supply_curves"]
    m, sol = solve_toy(tmp_path, t, MARKETS)
    assert sol.value(m.fuel_use["g", "t0", "a"]) == pytest.approx(100)
    assert sol.value(m.fuel_use["g", "t0", "b"]) == pytest.approx(50)
    assert sol.objective == pytest.approx(100 * 1 + 50 * 4)
    assert sol.evaluate(annual_emissions(m)["2030"]) == pytest.approx(100 * 0.05 + 50 * 0.07)


def test_fuel_and_non_fuel_names_must_differ(tmp_path):
    t = fueled([1], fuel_cost=flat_price(5), non_fuel_energy_sources=[{"energy_source": "gas"}])
    with pytest.raises(InputError, match="both fuel and non-fuel"):
        build(write_inputs(tmp_path, t), SIMPLE)


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.integers(0, 500), min_size=1, max_size=4), st.floats(0, 1), st.sampled_from([1, 3.5]))
def test_emissions_identity(tmp_path_factory, demand, intensity, scale):
    t = fueled(demand, fuels=(("gas", intensity),), fuel_cost=flat_price(5))
    t.update({k: v for k, v in toy_tables({"z": demand}, scale=scale).items() if k == "timeseries"})
    m, sol = solve_toy(tmp_path_factory.mktemp("em"), t, SIMPLE)
    recomputed = sum(sol.value(v) * intensity * m.ts.weight(tp) for (_, tp, _), v in m.fuel_use.items())
    assert sol.evaluate(annual_emissions(m)["2030"]) == pytest.approx(recomputed, abs=1e-6)
    assert recomputed == pytest.approx(sum(demand) * 10 * intensity * scale, abs=1e-6)
