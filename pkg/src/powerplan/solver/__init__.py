"""Solving assembled models: matrix form, reference simplex, branch and
bound, LP export and external solvers."""
from __future__ import annotations

from typing import Optional

from .bnb import branch_and_bound
from .external import format_solution, invoke_external, parse_solution, solve_external
from .lpfile import lp_text, write_lp_file
from .simplex import simplex_solve
from .solution import Solution, SolverOptions, Status, dual_objective, row_residuals
from .standard_form import StandardFormLP, to_standard_form


def solve_lp(lp: StandardFormLP, opts: Optional[SolverOptions] = None) -> Solution:
    opts = opts or SolverOptions()
    if opts.backend != "internal":
        return solve_external(lp, opts.backend, opts)
    if lp.has_integers:
        return branch_and_bound(lp, opts)
    return simplex_solve(lp, opts)


def solve(model, opts: Optional[SolverOptions] = None) -> Solution:
    """Solve an assembled model with the configured backend."""
    return solve_lp(to_standard_form(model), opts)


__all__ = [
    "Solution",
    "SolverOptions",
    "StandardFormLP",
    "Status",
    "branch_and_bound",
    "dual_objective",
    "format_solution",
    "invoke_external",
    "lp_text",
    "parse_solution",
    "row_residuals",
    "simplex_solve",
    "solve",
    "solve_external",
    "solve_lp",
    "to_standard_form",
    "write_lp_file",
]
