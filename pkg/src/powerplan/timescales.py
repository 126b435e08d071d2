"""Periods, timeseries and timepoints.

Input tables
------------
periods.csv
    period, start_year, length_years
timeseries.csv
    timeseries, period, num_timepoints, tp_duration_hours, scale_to_period,
    wrap (optional, default 1)
timepoints.csv
    timepoint, timeseries, position, timestamp (optional)

A timepoint's weight is ``tp_duration_hours * scale_to_period`` of its
series: the number of hours in the period it stands for. Chronology only
exists inside a series. With ``wrap`` set (the default) the first timepoint
of a series follows the last one; without it the series starts from a cold,
empty state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core.inputs import Dataset, to_bool, to_float, to_int, to_str
from .errors import InputError, NonContiguousPositions, OrphanTimepoint, OrphanTimeseries

HOURS_PER_YEAR = 8766.0

required_tables = ("periods", "timeseries", "timepoints")


@dataclass(frozen=True)
class Period:
    label: str
    start_year: int
    length_years: float

    @property
    def end_year(self) -> float:
        return self.start_year + self.length_years


@dataclass(frozen=True)
class Timeseries:
    id: str
    period: str
    num_timepoints: int
    tp_duration_hours: float
    scale_to_period: float
    wrap: bool = True

    @property
    def hours(self) -> float:
        return self.num_timepoints * self.tp_duration_hours


@dataclass(frozen=True)
class Timepoint:
    id: str
    timeseries: str
    position: int
    timestamp_label: str


@dataclass
class TimescaleSet:
    periods: List[Period]
    timeseries: Dict[str, Timeseries]
    timepoints: List[Timepoint]
    _tp: Dict[str, Timepoint] = field(init=False, repr=False)
    _by_series: Dict[str, List[Timepoint]] = field(init=False, repr=False)
    _period: Dict[str, Period] = field(init=False, repr=False)

    def __post_init__(self):
        self._tp = {t.id: t for t in self.timepoints}
        self._period = {p.label: p for p in self.periods}
        self._by_series = {ts: [] for ts in self.timeseries}
        for t in self.timepoints:
            self._by_series[t.timeseries].append(t)
        for lst in self._by_series.values():
            lst.sort(key=lambda t: t.position)

    def timepoint(self, tp) -> Timepoint:
        return tp if isinstance(tp, Timepoint) else self._tp[tp]

    def period(self, label) -> Period:
        return label if isinstance(label, Period) else self._period[str(label)]

    @property
    def period_labels(self) -> List[str]:
        return [p.label for p in self.periods]

    @property
    def timepoint_ids(self) -> List[str]:
        return [t.id for t in self.timepoints]

    def series_of(self, tp) -> Timeseries:
        return self.timeseries[self.timepoint(tp).timeseries]

    def period_of(self, tp) -> Period:
        return self._period[self.series_of(tp).period]

    def duration(self, tp) -> float:
        return self.series_of(tp).tp_duration_hours

    def weight(self, tp) -> float:
        return timepoint_weight(self.timepoint(tp), self)

    def series_in_period(self, period) -> List[Timeseries]:
        label = self.period(period).label
        return [ts for ts in self.timeseries.values() if ts.period == label]

    def tps_in_series(self, ts) -> List[str]:
        return [t.id for t in self._by_series[ts]]

    def tps_in_period(self, period) -> List[str]:
        out = []
        for ts in self.series_in_period(period):
            out += self.tps_in_series(ts.id)
        return out

    def prev(self, tp) -> Optional[str]:
        """Predecessor within the series; circular unless wrapping is off."""
        t = self.timepoint(tp)
        series = self._by_series[t.timeseries]
        if t.position == 0:
            return series[-1].id if self.timeseries[t.timeseries].wrap else None
        return series[t.position - 1].id

    def window(self, tp, length: int) -> List[str]:
        """``tp`` and up to ``length - 1`` predecessors, never repeating a timepoint."""
        out, cur = [], self.timepoint(tp).id
        n = len(self._by_series[self.timepoint(tp).timeseries])
        while cur is not None and len(out) < min(length, n):
            out.append(cur)
            cur = self.prev(cur)
        return out

    def represented_hours(self, period) -> float:
        return sum(ts.scale_to_period * ts.hours for ts in self.series_in_period(period))


def timepoint_weight(tp: Timepoint, ts_set: TimescaleSet) -> float:
    """Hours of the period represented by one timepoint."""
    series = ts_set.timeseries[tp.timeseries]
    return series.tp_duration_hours * series.scale_to_period


def load_timescales(periods, timeseries, timepoints) -> TimescaleSet:
    """Build a validated :class:`TimescaleSet` from the three row lists."""
    plist = []
    for r in periods:
        length = to_float(r.get("length_years"), what="period length_years")
        if length <= 0:
            raise InputError(f"period {r.get('period')} has non-positive length")
        plist.append(Period(to_str(r["period"]), to_int(r["start_year"], what="start_year"), length))
    plist.sort(key=lambda p: p.start_year)
    if len({p.label for p in plist}) != len(plist):
        raise InputError("duplicate period labels")
    for a, b in zip(plist, plist[1:]):
        if a.end_year > b.start_year:
            raise InputError(f"periods {a.label} and {b.label} overlap")
    labels = {p.label for p in plist}

    series: Dict[str, Timeseries] = {}
    for r in timeseries:
        ts = Timeseries(
            to_str(r["timeseries"]),
            to_str(r["period"]),
            to_int(r["num_timepoints"], what="num_timepoints"),
            to_float(r["tp_duration_hours"], what="tp_duration_hours"),
            to_float(r["scale_to_period"], what="scale_to_period"),
            to_bool(r.get("wrap"), True),
        )
        if ts.period not in labels:
            raise OrphanTimeseries(f"timeseries {ts.id} refers to unknown period {ts.period}")
        if ts.num_timepoints <= 0 or ts.tp_duration_hours <= 0 or ts.scale_to_period <= 0:
            raise InputError(f"timeseries {ts.id} needs positive num_timepoints, duration and scale")
        if ts.id in series:
            raise InputError(f"duplicate timeseries {ts.id}")
        series[ts.id] = ts
    # order series by period, keeping file order inside a period
    order = {p.label: i for i, p in enumerate(plist)}
    series = dict(sorted(series.items(), key=lambda kv: order[kv[1].period]))

    tps: List[Timepoint] = []
    seen = set()
    for r in timepoints:
        tid, sid = to_str(r["timepoint"]), to_str(r["timeseries"])
        if sid not in series:
            raise OrphanTimepoint(f"timepoint {tid} refers to unknown timeseries {sid}")
        if tid in seen:
            raise InputError(f"duplicate timepoint {tid}")
        seen.add(tid)
        stamp = r.get("timestamp")
        tps.append(Timepoint(tid, sid, to_int(r["position"], what="position"), tid if stamp in (None, "") else to_str(stamp)))
    for sid, ts in series.items():
        positions = sorted(t.position for t in tps if t.timeseries == sid)
        if positions != list(range(ts.num_timepoints)):
            raise NonContiguousPositions(
                f"timeseries {sid} needs positions 0..{ts.num_timepoints - 1}, got {positions}"
            )
    sorder = {sid: i for i, sid in enumerate(series)}
    tps.sort(key=lambda t: (sorder[t.timeseries], t.position))
    return TimescaleSet(plist, series, tps)


@dataclass(frozen=True)
class PeriodCheck:
    period: str
    represented_hours: float
    expected_hours: float
    deviation: float
    passed: bool


@dataclass(frozen=True)
class TimescaleReport:
    tolerance: float
    periods: List[PeriodCheck]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.periods)


def validate_timescales(ts_set: TimescaleSet, tolerance: float) -> TimescaleReport:
    """Compare the hours each period represents with its calendar length."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    checks = []
    for p in ts_set.periods:
        rep = ts_set.represented_hours(p)
        expected = p.length_years * HOURS_PER_YEAR
        dev = abs(rep - expected) / expected
        checks.append(PeriodCheck(p.label, rep, expected, dev, dev <= tolerance))
    return TimescaleReport(tolerance, checks)


def from_dataset(data: Dataset) -> TimescaleSet:
    return load_timescales(
        data.table("periods", __name__).rows,
        data.table("timeseries", __name__).rows,
        data.table("timepoints", __name__).rows,
    )


def load_inputs(data: Dataset, inputs_dir) -> None:
    data.read_table(inputs_dir, "periods", __name__, ["period", "start_year", "length_years"])
    data.read_table(
        inputs_dir,
        "timeseries",
        __name__,
        ["timeseries", "period", "num_timepoints", "tp_duration_hours", "scale_to_period"],
    )
    data.read_table(inputs_dir, "timepoints", __name__, ["timepoint", "timeseries", "position"])
    from_dataset(data)  # fail early on inconsistent tables


def define_components(m) -> None:
    m.ts = from_dataset(m.data)
