"""Desk-scale workbench for sieve weights, admissible tuples, difference
graphs, and prime-gap statistics."""

__version__ = "0.1.0"

from .errors import (
    InvariantViolationError,
    ParameterConditionError,
    ResourceBudgetError,
)

__all__ = [
    "__version__",
    "InvariantViolationError",
    "ParameterConditionError",
    "ResourceBudgetError",
]
