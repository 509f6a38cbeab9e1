"""
Exception hierarchy shared by every package.

Callers that only care about "the request was wrong" catch
:class:`ConfigurationError`; the command line maps it to exit code 2.
"""


class ThresholdGTError(Exception):
    """Base class for all errors raised by this project."""


class ConfigurationError(ThresholdGTError):
    """A configuration value, file or combination of options is invalid."""


class InvalidInstanceError(ConfigurationError):
    """The problem instance violates ``0 <= l < u <= d < n`` or a related constraint."""

    def __init__(self, constraint: str, message: str | None = None) -> None:
        self.constraint = constraint
        super().__init__(message or f"invalid instance: violated constraint {constraint}")


class InvalidParameterError(ThresholdGTError):
    """An operation was called outside the range where it is defined."""


class DegenerateInstanceError(ThresholdGTError):
    """An expected positive fraction required for a decision band is zero."""

    def __init__(self, v: int, message: str | None = None) -> None:
        self.v = v
        super().__init__(message or f"degenerate instance: q_{v} = 0, decision band undefined")


class BudgetExceededError(ThresholdGTError):
    """A brute-force computation was asked to run beyond its hard budget."""


class DesignInvariantError(ThresholdGTError):
    """A generated design violates one of its structural guarantees."""
