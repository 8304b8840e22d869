"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: configuration problems exit with 2,
budget and precision failures with 3.
"""


class ZetamaxError(Exception):
    """Base class for all package errors."""


class DomainError(ZetamaxError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class EmptyTableError(DomainError):
    pass


class CapacityError(ZetamaxError):
    """A request would exceed the configured memory budget."""


class CoverageError(ZetamaxError):
    """A prime table does not reach far enough for the request."""

    def __init__(self, message: str, required_limit: int | None = None):
        super().__init__(message)
        self.required_limit = required_limit


class BudgetError(ZetamaxError):
    """A term or leaf budget would be exceeded."""

    def __init__(self, message: str, budget: int | None = None):
        super().__init__(message)
        self.budget = budget


class PrecisionError(ZetamaxError):
    """A requested accuracy cannot be reached within the term budget."""


class ResolutionError(ZetamaxError):
    """A quadrature step is too coarse for the integrand."""


class ResyncError(ZetamaxError):
    """Rotation-recurrence drift exceeded tolerance at a validation point."""


class DegenerateInputError(ZetamaxError):
    pass


class ConfigError(ZetamaxError):
    """Invalid experiment configuration. ``problems`` lists every violation."""

    def __init__(self, problems: list[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
