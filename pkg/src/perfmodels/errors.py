"""Exception hierarchy shared by every model in the package."""

from __future__ import annotations


class PerfModelError(Exception):
    """Base class for all errors raised by :mod:`perfmodels`."""


class DomainError(PerfModelError, ValueError):
    """An input lies outside the domain where a model is defined."""


class StabilityError(DomainError):
    """Utilization is at or above 1, so the queue has no steady state."""


class UndefinedResultError(DomainError):
    """The requested quantity is undefined for the given result."""


class SemanticError(DomainError):
    """Well-formed topology text that describes an invalid system."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class ParseError(PerfModelError):
    """Syntax error in topology text.

    ``line`` and ``column`` are 1-based and point at the first offending
    token; ``expected`` lists what the parser would have accepted there.
    """

    def __init__(self, message: str, line: int, column: int, expected: list[str] | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = list(expected or [])
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)
