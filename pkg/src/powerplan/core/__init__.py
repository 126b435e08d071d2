from .expr import (
    Constraint,
    Integrality,
    LinearExpression,
    Sense,
    VariableRef,
    as_expr,
    linear_combine,
    quicksum,
)
from .inputs import Dataset, Table
from .model import Model, Phase, Registry
from .modules import (
    ModuleDescriptor,
    build_model,
    load_inputs,
    post_solve,
    register_module,
    resolve_module,
    resolve_modules,
)

ModelGraph = Model

__all__ = [
    "Constraint",
    "Dataset",
    "Integrality",
    "LinearExpression",
    "Model",
    "ModelGraph",
    "ModuleDescriptor",
    "Phase",
    "Registry",
    "Sense",
    "Table",
    "VariableRef",
    "as_expr",
    "build_model",
    "linear_combine",
    "load_inputs",
    "post_solve",
    "quicksum",
    "register_module",
    "resolve_module",
    "resolve_modules",
]
