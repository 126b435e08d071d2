"""Module discovery and the model-building lifecycle.

A module is any importable Python module defining one or more of the
callbacks below. Built-in modules are addressed by their dotted name
relative to the ``powerplan`` package (``generators.core.build``); any other
name is imported as given, so user modules on ``sys.path`` work the same way.

Lifecycle, in order:

``define_arguments(parser)``
    add command-line options
``load_inputs(data, inputs_dir)``
    read the module's tables into the :class:`Dataset`
``define_components(m)``
    create variables, constraints and expressions; register costs and
    balance terms
``define_dynamic_components(m)``
    assemble anything built from the registries (objective, balances)
``post_solve(m, solution, outdir)``
    write output tables, returning the paths written
"""
from __future__ import annotations

import argparse
import importlib
import logging
from dataclasses import dataclass
from pathlib import Path
from types import ModuleType
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import ConfigError, DuplicateModule, MissingInput, UnknownModule
from .expr import LinearExpression
from .inputs import Dataset
from .model import Model, Phase

logger = logging.getLogger(__name__)

CALLBACKS = (
    "define_arguments",
    "define_components",
    "define_dynamic_components",
    "load_inputs",
    "post_solve",
)
PACKAGE = "powerplan"


@dataclass(frozen=True)
class ModuleDescriptor:
    name: str
    callbacks: Tuple[str, ...]
    module: ModuleType

    @property
    def required_tables(self) -> Tuple[str, ...]:
        return tuple(getattr(self.module, "required_tables", ()))

    def call(self, callback: str, *args):
        fn = getattr(self.module, callback, None)
        if fn is not None:
            return fn(*args)
        return None


def _import(name: str) -> Optional[ModuleType]:
    try:
        return importlib.import_module(name)
    except ModuleNotFoundError as e:
        # only swallow the error if it is the module itself that is missing
        if e.name and (name == e.name or name.startswith(e.name + ".")):
            return None
        raise


def resolve_module(name: str) -> ModuleDescriptor:
    name = name.strip()
    if not name:
        raise UnknownModule("empty module name")
    mod = _import(f"{PACKAGE}.{name}") or _import(name)
    if mod is None:
        raise UnknownModule(f"module {name!r} is neither a built-in nor an importable module")
    callbacks = tuple(c for c in CALLBACKS if callable(getattr(mod, c, None)))
    if not callbacks:
        raise UnknownModule(f"{name!r} defines none of the standard callbacks")
    return ModuleDescriptor(name, callbacks, mod)


def register_module(descriptor: ModuleDescriptor, modules: Sequence[ModuleDescriptor]) -> List[ModuleDescriptor]:
    if any(d.name == descriptor.name for d in modules):
        raise DuplicateModule(f"module {descriptor.name!r} listed twice")
    return list(modules) + [descriptor]


def resolve_modules(names: Iterable[str]) -> List[ModuleDescriptor]:
    modules: List[ModuleDescriptor] = []
    for n in names:
        modules = register_module(resolve_module(n), modules)
    return modules


def _descriptors(modules) -> List[ModuleDescriptor]:
    return [m if isinstance(m, ModuleDescriptor) else resolve_module(m) for m in modules]


def define_arguments(modules, parser: Optional[argparse.ArgumentParser] = None) -> argparse.ArgumentParser:
    parser = parser or argparse.ArgumentParser(add_help=False)
    for d in _descriptors(modules):
        d.call("define_arguments", parser)
    return parser


def parse_module_options(modules, args: Sequence[str] = ()) -> argparse.Namespace:
    parser = define_arguments(modules)
    ns, unknown = parser.parse_known_args(list(args))
    if unknown:
        raise ConfigError(f"unrecognized option(s): {' '.join(unknown)}")
    return ns


def load_inputs(inputs_dir, modules) -> Dataset:
    """Read every table the modules declare and check cross-table references."""
    inputs_dir = Path(inputs_dir)
    if not inputs_dir.is_dir():
        raise MissingInput(f"inputs directory {inputs_dir} does not exist")
    data = Dataset(inputs_dir=inputs_dir)
    for d in _descriptors(modules):
        d.call("load_inputs", data, inputs_dir)
    data.check_integrity()
    return data


def build_model(modules, data: Dataset, options: Optional[argparse.Namespace] = None) -> Model:
    modules = _descriptors(modules)
    if not modules:
        raise ConfigError("the module list is empty")
    names = [d.name for d in modules]
    if len(set(names)) != len(names):
        raise DuplicateModule("module list contains duplicates")
    for d in modules:
        for t in d.required_tables:
            if t not in data:
                raise MissingInput(f"module {d.name} needs input table '{t}.csv', which is not loaded")
    if options is None:
        options = parse_module_options(modules)

    m = Model(data, options, names)
    for d in modules:
        d.call("define_components", m)
    m.registry.frozen = True
    m.phase = Phase.DYNAMIC
    for d in modules:
        d.call("define_dynamic_components", m)
    m.check_registry()
    if m.objective is None:
        if m.registry.cost_components:
            raise ConfigError("cost components were registered but no module builds the objective (add 'financials')")
        m.objective = LinearExpression()
    m.phase = Phase.ASSEMBLED
    return m


def post_solve(m: Model, solution, outdir, modules) -> List[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    m.phase = Phase.POST_SOLVE
    written: List[Path] = []
    for d in _descriptors(modules):
        out = d.call("post_solve", m, solution, outdir)
        if out:
            written.extend(Path(p) for p in out)
    return written
