"""Exception hierarchy shared by every growthlab module."""

from __future__ import annotations


class GrowthLabError(Exception):
    """Base class for all growthlab errors."""


class MalformedWordError(GrowthLabError, ValueError):
    pass


class AlphabetMismatchError(GrowthLabError, ValueError):
    pass


class PresentationError(GrowthLabError, ValueError):
    """Invalid group definition; ``line`` is set when it came from a file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CompletionDivergedError(GrowthLabError):
    def __init__(self, message: str, rules_so_far: int):
        self.rules_so_far = rules_so_far
        super().__init__(message)


class OracleMismatchError(GrowthLabError):
    pass


class OracleResolutionError(GrowthLabError):
    pass


class BudgetExceededError(GrowthLabError):
    """Enumeration stopped early; ``table`` holds every completed radius."""

    def __init__(self, message: str, table):
        self.table = table
        super().__init__(message)

    @property
    def last_complete_radius(self) -> int:
        return self.table.radius


class MissingElementsError(GrowthLabError):
    pass


class RadiusTooSmallError(GrowthLabError):
    def __init__(self, message: str, required: int):
        self.required = required
        super().__init__(message)


class MalformedSeriesError(GrowthLabError, ValueError):
    pass


class NoFitError(GrowthLabError):
    """No recurrence up to the requested order fits; more terms are needed."""


class OverfitError(GrowthLabError):
    """A recurrence fits the training window but misses a held-out term."""


class NotApplicableError(GrowthLabError):
    pass
