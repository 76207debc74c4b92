"""Shared exception types."""


class InternalConsistencyError(RuntimeError):
    """A quantity the construction guarantees failed to hold.

    Signals an implementation bug (or a violated trusted inequality), never
    bad user input.
    """


class BudgetExceededError(RuntimeError):
    """An enumeration or escalation exceeded its configured budget."""
