"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so refusals are never
silently turned into numbers.
"""


class HypercountError(Exception):
    """Base class for all package errors."""


class InputError(HypercountError, ValueError):
    """Malformed or out-of-contract input (bad vertex ids, wrong class, ...)."""


class BudgetExceeded(HypercountError, RuntimeError):
    """An enumeration or search budget was hit; the result is a refusal,
    not an estimate."""


class GenerationError(HypercountError, RuntimeError):
    """Random instance generation exhausted its retry budget."""
