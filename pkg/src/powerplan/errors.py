"""Exception hierarchy shared by every powerplan module."""


class PowerPlanError(Exception):
    pass


# configuration / module composition
class ConfigError(PowerPlanError):
    pass


class UnknownModule(ConfigError):
    pass


class DuplicateModule(ConfigError):
    pass


# input data
class InputError(PowerPlanError):
    pass


class MissingInput(InputError):
    pass


class IntegrityError(InputError):
    pass


class OrphanTimepoint(IntegrityError):
    pass


class OrphanTimeseries(IntegrityError):
    pass


class NonContiguousPositions(InputError):
    pass


class MissingEnergyCost(InputError):
    pass


class DanglingZone(IntegrityError):
    pass


# model assembly
class ModelError(PowerPlanError):
    pass


class PhaseViolation(ModelError):
    pass


class DuplicateComponent(ModelError):
    pass


class UnresolvedRegistryEntry(ModelError):
    pass


class NonFiniteCoefficient(ModelError, ValueError):
    pass


# solving
class SolverError(PowerPlanError):
    pass


class IterationLimit(SolverError):
    pass


class NodeLimit(SolverError):
    pass


class SolverProcessFailure(SolverError):
    pass


class ParseError(SolverError):
    pass


class MissingComponent(ConfigError, AttributeError):
    pass
