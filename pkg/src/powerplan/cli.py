"""Command-line entry point.

Subcommands:

``run``
    build, solve and write outputs for one scenario
``batch``
    run every scenario of a scenario list, optionally in parallel
``validate``
    check the module list and inputs without solving
``export-lp``
    write the assembled model as an LP file

Options not recognized by the runner are handed to the modules, so
``powerplan run --unserved-load-penalty 5000`` works as expected. Exit
codes: 0 optimal, 2 infeasible, 3 unbounded, 4 configuration or input
error, 5 solver failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .errors import ConfigError, InputError, PowerPlanError, SolverError
from .scenarios import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_SOLVER,
    ScenarioConfig,
    export_lp,
    read_scenario_list,
    run_batch,
    run_scenario,
    validate,
)
from .solver import SolverOptions
from .solver.external import ENV_VAR, command_from_env

logger = logging.getLogger("powerplan")


def _scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--module-list", default="modules.txt", help="file naming one module per line (default %(default)s)")
    p.add_argument("--inputs-dir", default="inputs", help="directory of input tables (default %(default)s)")
    p.add_argument("--include-module", action="append", default=[], metavar="MODULE", help="add a module to the list")
    p.add_argument("--exclude-module", action="append", default=[], metavar="MODULE", help="drop a module from the list")


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", choices=("internal", "external"), default="internal", help="solver backend (default %(default)s)")
    p.add_argument("--solver-command", help=f"external solver command template (default: ${ENV_VAR})")
    p.add_argument("--feasibility-tol", type=float, default=1e-7)
    p.add_argument("--integrality-tol", type=float, default=1e-6)
    p.add_argument("--mip-gap", type=float, default=1e-6, help="relative MIP gap (default %(default)s)")
    p.add_argument("--max-nodes", type=int, default=200000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powerplan", description="Modular capacity-expansion and dispatch planning.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve one scenario")
    _scenario_args(run)
    _solver_args(run)
    run.add_argument("--outputs-dir", default="outputs", help="where output tables go (default %(default)s)")
    run.add_argument("--scenario-name", default="scenario")

    batch = sub.add_parser("batch", help="solve every scenario of a scenario list")
    batch.add_argument("scenario_list", help="file with one scenario per line: name followed by options")
    batch.add_argument("--outputs-root", help="parent of the per-scenario output directories (default: outputs beside the list)")
    batch.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes (default %(default)s)")
    _solver_args(batch)

    val = sub.add_parser("validate", help="check module list and inputs")
    _scenario_args(val)

    exp = sub.add_parser("export-lp", help="write the model as an LP file")
    _scenario_args(exp)
    exp.add_argument("--output", default="model.lp", help="LP file to write (default %(default)s)")
    return parser


def solver_options(ns) -> SolverOptions:
    backend = "internal"
    if ns.solver == "external":
        backend = ns.solver_command or command_from_env()
        if not backend:
            raise ConfigError(f"--solver external needs --solver-command or ${ENV_VAR}")
    return SolverOptions(
        feasibility_tol=ns.feasibility_tol,
        integrality_tol=ns.integrality_tol,
        relative_mip_gap=ns.mip_gap,
        max_nodes=ns.max_nodes,
        backend=backend,
    )


def config_from_args(ns, extra: List[str], outputs_dir=None, solver=None) -> ScenarioConfig:
    return ScenarioConfig(
        name=getattr(ns, "scenario_name", "scenario"),
        module_list_path=Path(ns.module_list),
        inputs_dir=Path(ns.inputs_dir),
        outputs_dir=Path(outputs_dir or "outputs"),
        module_options=list(extra),
        include_modules=list(ns.include_module),
        exclude_modules=list(ns.exclude_module),
        solver=solver or SolverOptions(),
    )


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns, extra = parser.parse_known_args(argv)
    _configure_logging(ns.verbose)
    try:
        if ns.command in ("run", "batch"):
            solver = solver_options(ns)
        if ns.command == "run":
            report = run_scenario(config_from_args(ns, extra, ns.outputs_dir, solver))
            if report.error:
                print(f"error: {report.error}", file=sys.stderr)
            else:
                print(f"{report.name}: {report.status} objective={report.objective!r}")
            return report.exit_code
        if ns.command == "batch":
            if extra:
                raise ConfigError(f"unrecognized option(s): {' '.join(extra)}; give module options per scenario")
            configs = read_scenario_list(ns.scenario_list, ns.outputs_root)
            for c in configs:
                c.solver = solver
            root = Path(ns.outputs_root) if ns.outputs_root else Path(ns.scenario_list).parent / "outputs"
            reports = run_batch(configs, ns.parallel, summary_dir=root)
            for r in reports:
                tail = r.error if r.error else f"{r.status} objective={r.objective!r}"
                print(f"{r.name}: {tail}")
            return max((r.exit_code for r in reports), default=EXIT_OK)
        if ns.command == "validate":
            names = validate(config_from_args(ns, extra))
            print(f"ok: {len(names)} modules, inputs consistent")
            return EXIT_OK
        if ns.command == "export-lp":
            path = export_lp(config_from_args(ns, extra), ns.output)
            print(f"wrote {path}")
            return EXIT_OK
    except (ConfigError, InputError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except PowerPlanError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    parser.error(f"unknown command {ns.command}")
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
