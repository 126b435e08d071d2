"""Running scenarios: module list → inputs → model → solve → outputs."""
from __future__ import annotations

import logging
import shlex
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .core.modules import build_model, load_inputs, parse_module_options, post_solve, resolve_module
from .core.output import write_table
from .errors import ConfigError, InputError, PowerPlanError, SolverError, UnknownModule
from .solver import Solution, SolverOptions, Status, solve, to_standard_form, write_lp_file

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INFEASIBLE, EXIT_UNBOUNDED, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3, 4, 5
STATUS_EXIT = {Status.OPTIMAL: EXIT_OK, Status.GAP_LIMIT: EXIT_OK, Status.INFEASIBLE: EXIT_INFEASIBLE, Status.UNBOUNDED: EXIT_UNBOUNDED}


def read_module_list(path) -> List[str]:
    """Module names in file order; blank lines and ``#`` comments are skipped."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"module list {path} does not exist")
    names = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        name = raw.split("#", 1)[0].strip()
        if not name:
            continue
        try:
            resolve_module(name)
        except UnknownModule as e:
            raise UnknownModule(f"{path.name} line {lineno}: {e}") from None
        names.append(name)
    return names


@dataclass
class ScenarioConfig:
    name: str
    module_list_path: Path
    inputs_dir: Path
    outputs_dir: Path
    module_options: List[str] = field(default_factory=list)
    include_modules: List[str] = field(default_factory=list)
    exclude_modules: List[str] = field(default_factory=list)
    solver: SolverOptions = field(default_factory=SolverOptions)

    def module_names(self) -> List[str]:
        names = [n for n in read_module_list(self.module_list_path) if n not in self.exclude_modules]
        for n in self.include_modules:
            if n not in names:
                names.append(n)
        return names


@dataclass
class RunReport:
    name: str
    status: Optional[str]
    objective: Optional[float]
    exit_code: int
    timings: Dict[str, float] = field(default_factory=dict)
    manifest: List[str] = field(default_factory=list)
    error: Optional[str] = None
    mip_gap: float = 0.0


def prepare(config: ScenarioConfig):
    """Resolve modules, parse options, read inputs and assemble the model."""
    names = config.module_names()
    options = parse_module_options(names, config.module_options)
    data = load_inputs(config.inputs_dir, names)
    return names, build_model(names, data, options)


def run_scenario(config: ScenarioConfig) -> RunReport:
    timings: Dict[str, float] = {}
    t = time.perf_counter()
    try:
        names, m = prepare(config)
        timings["build"] = time.perf_counter() - t
        t = time.perf_counter()
        sol = solve(m, config.solver)
        timings["solve"] = time.perf_counter() - t
    except (ConfigError, InputError) as e:
        return RunReport(config.name, None, None, EXIT_CONFIG, timings, error=f"{type(e).__name__}: {e}")
    except SolverError as e:
        return RunReport(config.name, None, None, EXIT_SOLVER, timings, error=f"{type(e).__name__}: {e}")
    except PowerPlanError as e:
        return RunReport(config.name, None, None, EXIT_CONFIG, timings, error=f"{type(e).__name__}: {e}")

    outdir = Path(config.outputs_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest: List[Path] = []
    t = time.perf_counter()
    if sol.status in (Status.OPTIMAL, Status.GAP_LIMIT):
        manifest += post_solve(m, sol, outdir, names)
    manifest.append(write_summary(outdir, config.name, sol))
    timings["post_solve"] = time.perf_counter() - t
    return RunReport(
        config.name,
        sol.status.value,
        sol.objective,
        STATUS_EXIT[sol.status],
        timings,
        [str(p) for p in manifest if Path(p).exists()],
        mip_gap=sol.mip_gap,
    )


def write_summary(outdir, name: str, sol: Solution) -> Path:
    return write_table(
        outdir, "summary.csv", ["scenario", "status", "objective", "mip_gap"], [[name, sol.status.value, sol.objective, sol.mip_gap]]
    )


def export_lp(config: ScenarioConfig, path) -> Path:
    _, m = prepare(config)
    return write_lp_file(to_standard_form(m), path)


def validate(config: ScenarioConfig) -> List[str]:
    """Check module list and inputs; returns the module names on success."""
    names = config.module_names()
    options = parse_module_options(names, config.module_options)
    data = load_inputs(config.inputs_dir, names)
    build_model(names, data, options)
    return names


# batches

BATCH_FLAGS = ("--module-list", "--inputs-dir", "--outputs-dir", "--include-module", "--exclude-module")


def parse_scenario_line(line: str, base_dir, outputs_root, defaults: Optional[ScenarioConfig] = None) -> ScenarioConfig:
    tokens = shlex.split(line, comments=True)
    if not tokens:
        raise ConfigError("empty scenario line")
    name, rest = tokens[0], tokens[1:]
    base_dir = Path(base_dir)
    module_list = defaults.module_list_path if defaults else base_dir / "modules.txt"
    inputs = defaults.inputs_dir if defaults else base_dir / "inputs"
    outputs = Path(outputs_root) / name
    include, exclude, options = [], [], []
    i = 0
    while i < len(rest):
        tok = rest[i]
        key, eq, val = tok.partition("=")
        if key in BATCH_FLAGS:
            if not eq:
                if i + 1 >= len(rest):
                    raise ConfigError(f"scenario {name}: {key} needs a value")
                val = rest[i + 1]
                i += 1
            if key == "--module-list":
                module_list = base_dir / val
            elif key == "--inputs-dir":
                inputs = base_dir / val
            elif key == "--outputs-dir":
                outputs = base_dir / val
            elif key == "--include-module":
                include.append(val)
            else:
                exclude.append(val)
        else:
            options.append(tok)
        i += 1
    solver = defaults.solver if defaults else SolverOptions()
    return ScenarioConfig(name, Path(module_list), Path(inputs), Path(outputs), options, include, exclude, solver)


def read_scenario_list(path, outputs_root=None, defaults: Optional[ScenarioConfig] = None) -> List[ScenarioConfig]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"scenario list {path} does not exist")
    outputs_root = Path(outputs_root) if outputs_root else path.parent / "outputs"
    configs = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        if not raw.split("#", 1)[0].strip():
            continue
        configs.append(parse_scenario_line(raw, path.parent, outputs_root, defaults))
    names = [c.name for c in configs]
    dup = sorted({n for n in names if names.count(n) > 1})
    if dup:
        raise ConfigError(f"scenario names must be unique; repeated: {dup}")
    return configs


def run_batch(configs: Sequence[ScenarioConfig], parallelism: int = 1, summary_dir=None) -> List[RunReport]:
    """Run scenarios independently; a failing scenario does not stop the rest."""
    configs = list(configs)
    if parallelism > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            reports = list(pool.map(run_scenario, configs))
    else:
        reports = [run_scenario(c) for c in configs]
    if summary_dir is not None:
        write_batch_summary(summary_dir, reports)
    return reports


def write_batch_summary(outdir, reports: Sequence[RunReport]) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    base = next((r.objective for r in reports if r.objective is not None and r.exit_code == EXIT_OK), None)
    rows = []
    for r in reports:
        delta = r.objective - base if (base is not None and r.objective is not None and r.exit_code == EXIT_OK) else ""
        rows.append([r.name, r.status or "error", r.objective if r.objective is not None else "", delta, r.exit_code, r.error or ""])
    return write_table(outdir, "batch_summary.csv", ["scenario", "status", "objective", "change_vs_first", "exit_code", "error"], rows)
