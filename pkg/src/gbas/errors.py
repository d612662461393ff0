"""Exception types shared across the package."""


class GbasError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GbasError, ValueError):
    """A parameter lies outside the domain where an operation is defined."""


class DataError(GbasError, ValueError):
    """Input data (a stream value or a line of a file) is malformed."""

    def __init__(self, message, line=None, value=None):
        super().__init__(message)
        self.line = line
        self.value = value


class BudgetExhausted(GbasError, RuntimeError):
    """A sequential estimator hit its draw budget before stopping.

    Carries the partial state so callers can report how far the run got.
    """

    def __init__(self, message, successes=0, r_total=0.0, draws=0, replicate=None):
        super().__init__(message)
        self.successes = successes
        self.r_total = r_total
        self.draws = draws
        self.replicate = replicate
