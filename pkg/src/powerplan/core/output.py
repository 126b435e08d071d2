"""Deterministic CSV output."""
import csv
import math
from pathlib import Path


def fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        if v == 0.0:
            return "0"  # never write -0
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".12g")
    return str(v)


def write_table(outdir, filename, header, rows) -> Path:
    path = Path(outdir) / filename
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    return path
