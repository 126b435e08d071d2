"""Full dumps of the solved model: every variable and, for LPs, every
constraint dual."""
from __future__ import annotations

from .core.output import write_table


def post_solve(m, solution, outdir):
    rows = [[v.name, solution.value(v)] for v in m.variables]
    paths = [write_table(outdir, "variables.csv", ["variable", "value"], rows)]
    if solution.duals:
        rows = [[c.name, solution.duals.get(c.name, 0.0)] for c in m.constraints]
        paths.append(write_table(outdir, "duals.csv", ["constraint", "dual"], rows))
    return paths
