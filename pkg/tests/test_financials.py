import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import build, single_period_tables, write_inputs
from powerplan.core.expr import linear_combine
from powerplan.errors import InputError
from powerplan.financials import FinancialParams, crf, period_discount_factor
from powerplan.timescales import Period


def amortized_payment(rate, n):
    """Level payment that repays 1 over n years, found by bisection on the schedule."""
    lo, hi = 0.0, 2.0
    for _ in range(200):
        pay = (lo + hi) / 2
        balance = 1.0
        for _ in range(n):
            balance = balance * (1 + rate) - pay
        lo, hi = (pay, hi) if balance > 0 else (lo, pay)
    return (lo + hi) / 2


def test_crf_zero_rate():
    assert crf(0, 20) == 0.05


def test_crf_matches_amortization_schedule():
    assert crf(0.05, 20) == pytest.approx(0.080243, abs=1e-6)
    assert crf(0.05, 20) == pytest.approx(amortized_payment(0.05, 20), abs=1e-9)


def test_crf_single_year():
    assert crf(0.10, 1) == pytest.approx(1.1)


def test_crf_rejects_short_life():
    with pytest.raises(ValueError):
        crf(0.05, 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 0.3), st.integers(1, 60))
def test_crf_repays_principal(rate, n):
    """Discounting n level payments of crf at the same rate gives back 1."""
    pv = sum(crf(rate, n) / (1 + rate) ** k for k in range(1, n + 1))
    assert pv == pytest.approx(1.0, rel=1e-9)


def test_discount_factor_zero_rate():
    assert period_discount_factor(FinancialParams(2020, 0.0, 0.0), Period("p", 2030, 5)) == 5.0


def test_discount_factor_by_summation():
    df = period_discount_factor(FinancialParams(2020, 0.05, 0.05), Period("p", 2025, 5))
    assert df == pytest.approx(sum(1.05**-k for k in range(5, 10)), abs=1e-12)
    assert df == pytest.approx(3.56187, abs=1e-5)


def test_discount_factor_single_base_year():
    assert period_discount_factor(FinancialParams(2020, 0.05, 0.05), Period("p", 2020, 1)) == 1.0


def test_period_before_base_year_rejected():
    with pytest.raises(InputError):
        period_discount_factor(FinancialParams(2020, 0.05, 0.05), Period("p", 2010, 5))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.001, 0.2), st.integers(0, 30), st.integers(1, 15))
def test_later_periods_weigh_less(rate, offset, length):
    params = FinancialParams(2020, rate, rate)
    early = period_discount_factor(params, Period("a", 2020 + offset, length))
    late = period_discount_factor(params, Period("b", 2020 + offset + length, length))
    assert late < early


def test_rates_validated():
    with pytest.raises(InputError):
        FinancialParams(2020, 1.5, 0.05)


# objective assembly


def _money_only(tmp_path, **kw):
    t = single_period_tables(**kw)
    del t["load_zones"]
    return write_inputs(tmp_path, t)


def test_no_components_gives_zero_objective(tmp_path):
    m = build(_money_only(tmp_path), ["timescales", "financials"])
    assert m.objective.is_constant() and m.objective.constant == 0


def _with_cost_module(tmp_path, monkeypatch, name, body):
    (tmp_path / f"{name}.py").write_text(body)
    monkeypatch.syspath_prepend(str(tmp_path))


def test_timepoint_cost_weighted_by_hours(tmp_path, monkeypatch):
    _with_cost_module(
        tmp_path,
        monkeypatch,
        "hourly_cost",
        "def define_components(m):\n"
        "    m.add_expression('Toy', {tp: 100.0 for tp in m.ts.timepoint_ids})\n"
        "    m.register('cost-timepoint', 'Toy')\n",
    )
    d = _money_only(tmp_path / "in", durations=(1.0,), scale=10.0)
    m = build(d, ["timescales", "financials", "hourly_cost"])
    assert m.objective.constant == pytest.approx(1000.0)


def test_equal_costs_in_later_period_count_less(tmp_path, monkeypatch):
    _with_cost_module(
        tmp_path,
        monkeypatch,
        "period_cost",
        "def define_components(m):\n"
        "    x = m.add_var('X')\n"
        "    m.toy_var = x\n"
        "    m.add_expression('Toy', {p: 1000.0 * x for p in m.ts.period_labels})\n"
        "    m.register('cost-period', 'Toy')\n",
    )
    inputs = tmp_path / "in"
    write_inputs(
        inputs,
        {
            "periods": [
                {"period": "2020", "start_year": 2020, "length_years": 5},
                {"period": "2025", "start_year": 2025, "length_years": 5},
            ],
            "timeseries": [
                {"timeseries": f"s{p}", "period": str(p), "num_timepoints": 1, "tp_duration_hours": 1, "scale_to_period": 1}
                for p in (2020, 2025)
            ],
            "timepoints": [{"timepoint": f"t{p}", "timeseries": f"s{p}", "position": 0} for p in (2020, 2025)],
            "financials": [{"base_financial_year": 2020, "discount_rate": 0.05, "interest_rate": 0.05}],
        },
    )
    m = build(inputs, ["timescales", "financials", "period_cost"])
    parts = {p: m.period_df[p] * 1000.0 for p in ("2020", "2025")}
    assert parts["2025"] < parts["2020"]
    assert m.objective.coefficient(m.toy_var) == pytest.approx(sum(parts.values()))
    assert m.objective == linear_combine([(sum(parts.values()), m.toy_var)])
