"""Exception hierarchy shared by all modules."""


class HznError(Exception):
    """Base class for library errors."""


class DomainError(HznError, ValueError):
    """Argument outside the domain of the requested function."""


class CutError(DomainError):
    """Argument lies exactly on a branch cut."""


class BranchCrossingError(DomainError):
    """An integration path would cross a branch cut of the integrand."""


class IntegrandError(HznError, FloatingPointError):
    """Integrand produced a non-finite value."""


class ConvergenceError(HznError, ArithmeticError):
    """Numerical method stopped before reaching the requested tolerance."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
