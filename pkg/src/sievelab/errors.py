"""Shared exception types.

Three failure categories cross module boundaries and map onto distinct CLI
exit codes: blowing a memory/size budget, violating a mathematical validity
condition on parameters, and internal invariants that should be unreachable.
"""


class ResourceBudgetError(RuntimeError):
    """A requested computation exceeds a configured memory or size budget."""


class ParameterConditionError(ValueError):
    """A parameter bundle violates a mathematical validity condition."""


class InvariantViolationError(RuntimeError):
    """An internal invariant that should be unreachable was violated."""
