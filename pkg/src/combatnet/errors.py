"""Exception types shared across the package.

The CLI maps these onto exit codes: ParameterError -> 2,
InfeasibleError -> 3, DegenerateNetworkError / GenerationError -> 4.
"""


class CombatNetError(Exception):
    """Base class for all package errors."""


class ParameterError(CombatNetError, ValueError):
    """An argument violates a documented precondition."""


class GenerationError(CombatNetError, RuntimeError):
    """A random generator failed to terminate within its draw cap."""


class DegenerateNetworkError(CombatNetError, RuntimeError):
    """The unattacked network has no operational capability (no O-to-A links),
    so the relative damage measure is undefined. Callers should regenerate."""


class InfeasibleError(CombatNetError, RuntimeError):
    """No node set satisfies the cost/cardinality constraints."""


class ConvergenceError(CombatNetError, RuntimeError):
    """An iterative computation hit its iteration cap before converging."""
