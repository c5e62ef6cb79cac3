"""Exceptions raised by the ndc2 engine."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction


class Ndc2Error(Exception):
    """Base class for engine errors."""

    def __init__(self, message: str = ""):
        """Initialize the exception."""
        self.message = message
        super().__init__(message)


class DomainError(Ndc2Error):
    """Exception raised when an argument lies outside an operation's domain."""


class ContractError(DomainError):
    """Exception raised when an operation's precondition is violated."""


class ConfigurationError(Ndc2Error):
    """Exception raised for invalid engine options."""


class ResourceBudgetError(Ndc2Error):
    """Exception raised when rewriting exceeds its step budget."""

    def __init__(self, budget: int, steps: int, message: str = ""):
        """Initialize the exception."""
        self.budget = budget
        self.steps = steps
        super().__init__(
            message or f"step budget of {budget} exhausted after {steps} steps"
        )


class EvaluationError(Ndc2Error):
    """Exception raised when a scalar cannot be evaluated at a point."""

    def __init__(self, point: Mapping[str, Fraction], message: str = ""):
        """Initialize the exception."""
        self.point = dict(point)
        rendered = ", ".join(f"{name}={value}" for name, value in self.point.items())
        super().__init__(message or f"denominator vanishes at ({rendered})")


class ParseError(Ndc2Error):
    """Exception raised for malformed expression text."""

    def __init__(
        self,
        line: int,
        column: int,
        expected: Iterable[str] = (),
        found: str = "",
        message: str = "",
    ):
        """Initialize the exception."""
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        if not message:
            message = f"unexpected {found or 'end of input'!r}"
            if self.expected:
                message += f", expected one of: {', '.join(self.expected)}"
        super().__init__(f"line {line}, column {column}: {message}")
