import csv
import sys
from pathlib import Path

import pytest

from helpers import BASE_MODULES, build, copy_minigrid, existing, project, read_csv, toy_tables, write_inputs
from powerplan.cli import main
from powerplan.errors import ConfigError, UnknownModule
from powerplan.scenarios import (
    EXIT_CONFIG,
    EXIT_INFEASIBLE,
    EXIT_OK,
    parse_scenario_line,
    read_module_list,
    read_scenario_list,
)
from powerplan.solver import to_standard_form, write_lp_file


@pytest.fixture
def minigrid(tmp_path, monkeypatch):
    d = copy_minigrid(tmp_path)
    monkeypatch.chdir(d)
    return d


def tree(root):
    """Relative path -> bytes for every file under ``root``."""
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(Path(root).rglob("*")) if p.is_file()}


def toy_case(tmp_path, modules, demand=100, mw=10):
    """A one-zone case that needs ``demand`` MW from ``mw`` MW of supply."""
    tables = toy_tables(
        {"z": [demand]},
        non_fuel_energy_sources=[{"energy_source": "grid", "is_renewable": 0}],
        projects=[project("g", source="grid", variable_om=10)],
        gen_predetermined_builds=[existing("g", mw)],
    )
    write_inputs(tmp_path / "inputs", tables)
    (tmp_path / "modules.txt").write_text("\n".join(modules) + "\n")
    return tmp_path


# module lists


def test_minigrid_module_list(minigrid):
    names = read_module_list("modules.txt")
    assert len(names) == 16 and names[0] == "timescales" and names[-1] == "reporting"


def test_comments_and_blanks_skipped(tmp_path):
    (tmp_path / "m.txt").write_text("# only a comment\n\n   \ntimescales  # trailing\n")
    assert read_module_list(tmp_path / "m.txt") == ["timescales"]


def test_unknown_module_reports_line(tmp_path):
    (tmp_path / "m.txt").write_text("timescales\n\ngenerators.core.warp_drive\n")
    with pytest.raises(UnknownModule, match="line 3"):
        read_module_list(tmp_path / "m.txt")


def test_missing_module_list(tmp_path):
    with pytest.raises(ConfigError, match="does not exist"):
        read_module_list(tmp_path / "nope.txt")


# run


def test_run_minigrid(minigrid, capsys):
    assert main(["run"]) == EXIT_OK
    assert "optimal objective=" in capsys.readouterr().out
    (summary,) = read_csv("outputs/summary.csv")
    assert summary["status"] == "optimal" and float(summary["objective"]) > 0
    assert {"dispatch.csv", "gen_build.csv", "costs_by_component.csv", "storage_dispatch.csv"} <= set(tree("outputs"))


def test_run_outputs_are_reproducible(minigrid):
    assert main(["run", "--outputs-dir", "a"]) == EXIT_OK
    assert main(["run", "--outputs-dir", "b"]) == EXIT_OK
    assert tree("a") == tree("b")


def test_module_options_pass_through(minigrid):
    assert main(["run", "--unserved-load-penalty", "5000", "--outputs-dir", "cheap"]) == EXIT_OK
    assert main(["run", "--outputs-dir", "default"]) == EXIT_OK
    cheap, default = read_csv("cheap/summary.csv")[0], read_csv("default/summary.csv")[0]
    assert float(cheap["objective"]) <= float(default["objective"])


def test_unknown_option_is_config_error(minigrid, capsys):
    assert main(["run", "--no-such-option", "1"]) == EXIT_CONFIG
    assert "unrecognized option" in capsys.readouterr().err


def test_infeasible_without_unserved_load(tmp_path, monkeypatch, capsys):
    d = toy_case(tmp_path, BASE_MODULES + ["generators.core.no_commit"])
    monkeypatch.chdir(d)
    assert main(["run"]) == EXIT_INFEASIBLE
    assert read_csv("outputs/summary.csv")[0]["status"] == "infeasible"
    assert not (d / "outputs" / "dispatch.csv").exists()
    # the same case solves once unserved load is allowed
    assert main(["run", "--include-module", "balancing.unserved_load"]) == EXIT_OK


def test_missing_table_is_input_error(minigrid, capsys):
    (minigrid / "inputs" / "loads.csv").unlink()
    assert main(["run"]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "MissingInput" in err and "loads" in err


def test_dangling_reference_is_input_error(minigrid, capsys):
    path = minigrid / "inputs" / "loads.csv"
    rows = list(csv.reader(path.open()))
    rows[1][0] = "atlantis"
    with path.open("w", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)
    assert main(["validate"]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "IntegrityError" in err and "atlantis" in err


def test_external_solver_needs_command(minigrid, monkeypatch, capsys):
    monkeypatch.delenv("POWERPLAN_SOLVER_COMMAND", raising=False)
    assert main(["run", "--solver", "external"]) == EXIT_CONFIG
    assert "--solver-command" in capsys.readouterr().err


def test_external_solver_from_cli(minigrid):
    pytest.importorskip("highspy")
    tool = Path(__file__).parent / "tools" / "highs_solver.py"
    cmd = f"{sys.executable} {tool} {{input}} {{output}}"
    assert main(["run", "--solver", "external", "--solver-command", cmd, "--outputs-dir", "ext"]) == EXIT_OK
    assert main(["run", "--outputs-dir", "int"]) == EXIT_OK
    ext, internal = read_csv("ext/summary.csv")[0], read_csv("int/summary.csv")[0]
    assert float(ext["objective"]) == pytest.approx(float(internal["objective"]), rel=1e-9)


# validate and export


def test_validate(minigrid, capsys):
    assert main(["validate"]) == EXIT_OK
    assert "ok: 16 modules" in capsys.readouterr().out
    assert not (minigrid / "outputs").exists()


def test_export_lp_matches_library(minigrid):
    assert main(["export-lp", "--output", "cli.lp"]) == EXIT_OK
    m = build(minigrid / "inputs", read_module_list("modules.txt"))
    lib = write_lp_file(to_standard_form(m), minigrid / "lib.lp")
    assert (minigrid / "cli.lp").read_bytes() == lib.read_bytes()


def test_exclude_module(minigrid):
    assert main(["export-lp", "--exclude-module", "reporting", "--output", "a.lp"]) == EXIT_OK
    assert main(["export-lp", "--output", "b.lp"]) == EXIT_OK
    # reporting adds no rows or columns
    assert Path("a.lp").read_bytes() == Path("b.lp").read_bytes()


# batches


def test_scenario_line_parsing(tmp_path):
    c = parse_scenario_line("high --inputs-dir alt --include-module x --penalty=5 # note", tmp_path, tmp_path / "out")
    assert c.name == "high" and c.inputs_dir == tmp_path / "alt" and c.include_modules == ["x"]
    assert c.module_options == ["--penalty=5"] and c.outputs_dir == tmp_path / "out" / "high"


def test_duplicate_scenario_names(tmp_path):
    (tmp_path / "s.txt").write_text("a\na --x 1\n")
    with pytest.raises(ConfigError, match="unique"):
        read_scenario_list(tmp_path / "s.txt")


def test_batch_parallel_matches_serial(minigrid):
    assert main(["batch", "scenarios.txt", "--outputs-root", "serial"]) == EXIT_OK
    assert main(["batch", "scenarios.txt", "--outputs-root", "par", "--parallel", "4"]) == EXIT_OK
    serial = tree("serial")
    assert serial == tree("par")
    rows = read_csv("serial/batch_summary.csv")
    assert [r["scenario"] for r in rows] == [line.split()[0] for line in read_scenario_lines()]
    assert all(r["status"] == "optimal" for r in rows) and float(rows[0]["change_vs_first"]) == 0


def read_scenario_lines():
    return [ln for ln in Path("scenarios.txt").read_text().splitlines() if ln.split("#", 1)[0].strip()]


def test_failing_scenario_is_recorded(minigrid, capsys):
    Path("mixed.txt").write_text("good\nbroken --inputs-dir nowhere\nalso_good --unserved-load-penalty 5000\n")
    assert main(["batch", "mixed.txt", "--parallel", "2"]) == EXIT_CONFIG
    rows = {r["scenario"]: r for r in read_csv("outputs/batch_summary.csv")}
    assert rows["good"]["status"] == rows["also_good"]["status"] == "optimal"
    assert rows["broken"]["status"] == "error" and "nowhere" in rows["broken"]["error"]
    assert int(rows["broken"]["exit_code"]) == EXIT_CONFIG
    assert "broken: MissingInput" in capsys.readouterr().out


def test_batch_rejects_loose_options(minigrid):
    assert main(["batch", "scenarios.txt", "--unserved-load-penalty", "1"]) == EXIT_CONFIG
