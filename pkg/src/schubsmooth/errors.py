"""Shared exception types."""


class CapExceeded(RuntimeError):
    """An interval-style operation was asked to exceed its configured length cap."""


class BudgetExceeded(RuntimeError):
    """An enumeration exceeded its length or time budget before its stop rule fired."""


class MalformedDiagram(ValueError):
    """A staircase diagram's relation is not a partial order, or blocks are malformed."""


class NotSmooth(ValueError):
    """Raised when an operation requires a smooth element and the input is not."""
