"""Running an external solver and reading its answer.

The command template is taken from the ``--solver-command`` option or the
``POWERPLAN_SOLVER_COMMAND`` environment variable, e.g.::

    mysolver --read {input} --write-solution {output}

``{input}`` is replaced by the LP file and ``{output}`` by the path where the
solver (or a wrapper script) must leave a solution file in this format::

    # comment lines and blank lines are ignored
    Objective: 1234.5
    Status: optimal
    BuildGen(wind,2025) 150
    DispatchGen(wind,t1) 42.0
    Duals:
    EnergyBalance(north,t1) 31.2

Names are the sanitized names of the LP file. ``Status`` defaults to
optimal; the ``Duals:`` section is optional.
"""
from __future__ import annotations

import logging
import math
import os
import shlex
import subprocess
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from ..errors import ParseError, SolverProcessFailure
from .lpfile import lp_names, write_lp_file
from .solution import Solution, SolverOptions, Status

logger = logging.getLogger(__name__)

ENV_VAR = "POWERPLAN_SOLVER_COMMAND"


def command_from_env() -> Optional[str]:
    return os.environ.get(ENV_VAR) or None


def invoke_external(lp_path, template: str, output_path=None, timeout: Optional[float] = None) -> str:
    """Run the solver command on ``lp_path`` and return the solution file text."""
    if "{input}" not in template or "{output}" not in template:
        raise SolverProcessFailure("solver command template needs {input} and {output} placeholders")
    lp_path = Path(lp_path)
    output_path = Path(output_path) if output_path else lp_path.with_suffix(".sol")
    cmd = template.format(input=shlex.quote(str(lp_path)), output=shlex.quote(str(output_path)))
    try:
        proc = subprocess.run(shlex.split(cmd), capture_output=True, text=True, timeout=timeout)
    except (OSError, subprocess.TimeoutExpired) as e:
        raise SolverProcessFailure(f"could not run solver command {cmd!r}: {e}") from e
    if proc.returncode != 0:
        tail = (proc.stderr or proc.stdout or "").strip().splitlines()[-5:]
        raise SolverProcessFailure(f"solver exited with code {proc.returncode}: {' | '.join(tail)}")
    if not output_path.exists():
        raise SolverProcessFailure(f"solver finished but wrote no solution file at {output_path}")
    return output_path.read_text(encoding="utf-8")


def _number(tok: str, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: {tok!r} is not a number") from None
    if math.isnan(v):
        raise ParseError(f"line {lineno}: NaN value")
    return v


def parse_solution(text: str, lp) -> Solution:
    cols, rows = lp_names(lp)
    col_of = {n: j for j, n in enumerate(cols)}
    row_of = {n: i for i, n in enumerate(rows)}
    objective, status = None, Status.OPTIMAL
    x = np.zeros(len(cols))
    seen = np.zeros(len(cols), bool)
    duals = {}
    in_duals = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        key = head.strip().lower()
        if key == "objective" and rest:
            objective = _number(rest.strip(), lineno)
            continue
        if key == "status" and rest:
            try:
                status = Status(rest.strip().lower())
            except ValueError:
                raise ParseError(f"line {lineno}: unknown status {rest.strip()!r}") from None
            continue
        if key == "duals" and not rest.strip():
            in_duals = True
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<name> <value>', got {line!r}")
        name, value = parts[0], _number(parts[1], lineno)
        if in_duals:
            if name in row_of:
                duals[lp.row_names[row_of[name]]] = value
            else:
                logger.warning("solution names unknown constraint %s; ignored", name)
        elif name in col_of:
            x[col_of[name]] = value
            seen[col_of[name]] = True
        elif name != "ONE_VAR_CONSTANT":
            logger.warning("solution names unknown variable %s; ignored", name)
    if objective is None and status in (Status.OPTIMAL, Status.GAP_LIMIT):
        raise ParseError("solution has no 'Objective:' header")
    if status not in (Status.OPTIMAL, Status.GAP_LIMIT):
        obj = math.inf if status is Status.INFEASIBLE else -math.inf
        return Solution(status, {}, obj)
    missing = [lp.col_names[j] for j in np.flatnonzero(~seen)]
    if missing:
        logger.warning("solution lacks %d variable(s), set to 0: %s", len(missing), ", ".join(missing[:10]))
    values = {n: float(v) for n, v in zip(lp.col_names, x)}
    return Solution(status, values, objective, duals, x=x)


def format_solution(solution: Solution, lp) -> str:
    """Render a solution in the format read by :func:`parse_solution`."""
    cols, rows = lp_names(lp)
    lines = [f"Objective: {solution.objective!r}", f"Status: {solution.status.value}"]
    if solution.x is not None:
        lines += [f"{cols[j]} {float(v)!r}" for j, v in enumerate(solution.x)]
    if solution.duals:
        lines.append("Duals:")
        lines += [f"{rows[i]} {float(solution.duals[n])!r}" for i, n in enumerate(lp.row_names) if n in solution.duals]
    return "\n".join(lines) + "\n"


def solve_external(lp, template: str, opts: Optional[SolverOptions] = None, workdir=None) -> Solution:
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        lp_path = write_lp_file(lp, Path(tmp) / "model.lp")
        text = invoke_external(lp_path, template, Path(tmp) / "model.sol")
    return parse_solution(text, lp)
