"""Tabular input data.

Every input table is a UTF-8, comma-separated file with a header row, '.'
as the decimal mark and no thousands separators. A :class:`Dataset` maps
table names (file stem) to :class:`Table` objects. Tables can also be built
directly from Python rows, which is how most tests construct models.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import InputError, IntegrityError, MissingInput


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[Dict[str, Any]]
    source: str = "<memory>"
    module: Optional[str] = None

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def column(self, col: str) -> list:
        return [r[col] for r in self.rows]


@dataclass(frozen=True)
class ForeignKey:
    table: str
    columns: Tuple[str, ...]
    target: str
    target_columns: Tuple[str, ...]


@dataclass
class Dataset:
    tables: Dict[str, Table] = field(default_factory=dict)
    foreign_keys: List[ForeignKey] = field(default_factory=list)
    inputs_dir: Optional[Path] = None

    @classmethod
    def from_dict(cls, tables: Mapping[str, Iterable[Mapping[str, Any]]]) -> "Dataset":
        ds = cls()
        for name, rows in tables.items():
            ds.add_rows(name, rows)
        return ds

    def add_rows(self, name: str, rows: Iterable[Mapping[str, Any]], module: Optional[str] = None) -> Table:
        rows = [dict(r) for r in rows]
        cols: List[str] = []
        for r in rows:
            for c in r:
                if c not in cols:
                    cols.append(c)
        t = Table(name, cols, rows, module=module)
        self.tables[name] = t
        return t

    def __contains__(self, name: str) -> bool:
        return name in self.tables

    def table(self, name: str, module: Optional[str] = None) -> Table:
        try:
            return self.tables[name]
        except KeyError:
            who = f" (needed by {module})" if module else ""
            raise MissingInput(f"input table '{name}.csv' is not loaded{who}") from None

    def rows(self, name: str) -> List[Dict[str, Any]]:
        """Rows of an optional table; empty when absent."""
        t = self.tables.get(name)
        return t.rows if t is not None else []

    def read_table(
        self,
        inputs_dir: Path,
        name: str,
        module: str,
        columns: Sequence[str] = (),
        optional: bool = False,
    ) -> Optional[Table]:
        """Read ``<inputs_dir>/<name>.csv`` and check its mandatory columns."""
        path = Path(inputs_dir) / f"{name}.csv"
        if not path.exists():
            if optional:
                return None
            raise MissingInput(f"missing input file {path.name} required by module {module}")
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            header = [h.strip() for h in (reader.fieldnames or [])]
            rows = []
            for raw in reader:
                rows.append({k.strip(): (v.strip() if isinstance(v, str) else v) for k, v in raw.items() if k is not None})
        missing = [c for c in columns if c not in header]
        if missing:
            raise InputError(f"{path.name} (module {module}) lacks column(s) {', '.join(missing)}")
        t = Table(name, header, rows, source=str(path), module=module)
        self.tables[name] = t
        return t

    def add_foreign_key(self, table: str, columns, target: str, target_columns) -> None:
        if isinstance(columns, str):
            columns = (columns,)
        if isinstance(target_columns, str):
            target_columns = (target_columns,)
        fk = ForeignKey(table, tuple(columns), target, tuple(target_columns))
        if fk not in self.foreign_keys:
            self.foreign_keys.append(fk)

    def check_integrity(self) -> None:
        """Verify every declared foreign key whose tables are both loaded."""
        for fk in self.foreign_keys:
            if fk.table not in self.tables or fk.target not in self.tables:
                continue
            src, dst = self.tables[fk.table], self.tables[fk.target]
            keys = {tuple(to_str(r.get(c, "")) for c in fk.target_columns) for r in dst.rows}
            for i, r in enumerate(src.rows):
                key = tuple(to_str(r.get(c, "")) for c in fk.columns)
                if all(k == "" for k in key):
                    continue
                if key not in keys:
                    raise IntegrityError(
                        f"{fk.table}.csv row {i + 1} ({', '.join(f'{c}={v}' for c, v in zip(fk.columns, key))}) "
                        f"has no matching row in {fk.target}.csv ({', '.join(fk.target_columns)})"
                    )


# value parsing helpers shared by the modules

def is_blank(v) -> bool:
    return v is None or (isinstance(v, str) and v.strip() == "")


def to_float(v, default: Optional[float] = None, what: str = "value") -> float:
    if is_blank(v):
        if default is None:
            raise InputError(f"missing {what}")
        return default
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "infinity", ".", "+inf"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
    try:
        return float(v)
    except (TypeError, ValueError):
        raise InputError(f"cannot read {what} {v!r} as a number") from None


def to_int(v, default: Optional[int] = None, what: str = "value") -> int:
    x = to_float(v, None if default is None else float(default), what)
    if not float(x).is_integer():
        raise InputError(f"{what} {v!r} is not an integer")
    return int(x)


def to_bool(v, default: bool = False) -> bool:
    if is_blank(v):
        return default
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "y", "t"):
        return True
    if s in ("0", "false", "no", "n", "f"):
        return False
    raise InputError(f"cannot read {v!r} as a flag")


def to_str(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v).strip()
