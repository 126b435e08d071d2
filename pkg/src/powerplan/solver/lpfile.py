"""CPLEX-style LP text export.

Names are restricted to ``[A-Za-z0-9_()%,.]``: square brackets become
parentheses, any other character becomes ``_``, a leading digit or period
gets a ``_`` prefix and a name that collides with an earlier one gets
``_1``, ``_2`` ... appended. Coefficients are written with 12 significant
digits. An objective constant, and rows without terms, use the fixed
variable ``ONE_VAR_CONSTANT``.
"""
from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Iterable, List, Tuple

from ..core.expr import Sense
from .standard_form import StandardFormLP, to_standard_form

CONSTANT_VAR = "ONE_VAR_CONSTANT"
_BAD = re.compile(r"[^A-Za-z0-9_()%,.]")


def sanitize(name: str) -> str:
    s = _BAD.sub("_", name.replace("[", "(").replace("]", ")"))
    if not s or s[0].isdigit() or s[0] == ".":
        s = "_" + s
    return s


def unique_names(names: Iterable[str], taken=()) -> List[str]:
    used = set(taken)
    out = []
    for n in names:
        base = sanitize(n)
        cand, k = base, 0
        while cand in used:
            k += 1
            cand = f"{base}_{k}"
        used.add(cand)
        out.append(cand)
    return out


def lp_names(lp: StandardFormLP) -> Tuple[List[str], List[str]]:
    """Sanitized (column, row) names exactly as written to the file."""
    cols = unique_names(lp.col_names, taken={CONSTANT_VAR})
    rows = unique_names(lp.row_names, taken={"obj"})
    return cols, rows


def num(v: float) -> str:
    if v == 0:
        return "0"
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return format(v, ".12g")


def _term(a: float, name: str) -> str:
    return f"{'+' if a >= 0 else '-'}{num(abs(a))} {name}"


def _row_terms(terms: List[str]) -> str:
    # keep lines short for readers that limit line length
    lines, cur = [], []
    for t in terms:
        cur.append(t)
        if len(cur) == 8:
            lines.append(" ".join(cur))
            cur = []
    if cur:
        lines.append(" ".join(cur))
    return "\n   ".join(lines)


def lp_text(lp: StandardFormLP) -> str:
    cols, rows = lp_names(lp)
    uses_const = lp.obj_constant != 0
    out = ["\\ powerplan LP export", "Minimize"]
    obj = [_term(a, cols[j]) for j, a in enumerate(lp.c) if a != 0]
    if uses_const:
        obj.append(_term(lp.obj_constant, CONSTANT_VAR))
    out.append(" obj:" + (" " + _row_terms(obj) if obj else ""))
    out.append("Subject To")
    A = lp.A.tocsr()
    for i in range(A.shape[0]):
        start, end = A.indptr[i], A.indptr[i + 1]
        idx, vals = A.indices[start:end], A.data[start:end]
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        terms = [_term(vals[k], cols[idx[k]]) for k in order if vals[k] != 0]
        if not terms:
            uses_const = True
            terms = [f"+0 {CONSTANT_VAR}"]
        op = {Sense.LE: "<=", Sense.GE: ">=", Sense.EQ: "="}[lp.senses[i]]
        out.append(f" {rows[i]}: {_row_terms(terms)} {op} {num(lp.rhs[i])}")
    out.append("Bounds")
    for j, name in enumerate(cols):
        lo, hi = lp.lb[j], lp.ub[j]
        if lo == hi:
            out.append(f" {name} = {num(lo)}")
        elif math.isinf(lo) and math.isinf(hi):
            out.append(f" {name} free")
        else:
            out.append(f" {num(lo)} <= {name} <= {num(hi)}")
    if uses_const:
        out.append(f" {CONSTANT_VAR} = 1")
    ints = [cols[j] for j in range(len(cols)) if lp.integer[j]]
    if ints:
        out.append("Generals")
        out.extend(f" {n}" for n in ints)
    out.append("End")
    return "\n".join(out) + "\n"


def write_lp_file(model_or_lp, path) -> Path:
    lp = model_or_lp if isinstance(model_or_lp, StandardFormLP) else to_standard_form(model_or_lp)
    path = Path(path)
    path.write_text(lp_text(lp), encoding="utf-8", newline="\n")
    return path
