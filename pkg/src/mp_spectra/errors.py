"""Exception hierarchy shared by the numerical modules and the CLI."""


class MPSpectraError(Exception):
    """Base class for all errors raised by :mod:`mp_spectra`."""


class DomainError(MPSpectraError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(MPSpectraError, ArithmeticError):
    """An iterative method hit its iteration cap."""


class DefinitenessError(MPSpectraError, ArithmeticError):
    """A matrix expected to be positive definite produced a nonpositive pivot."""

    def __init__(self, index, pivot):
        super().__init__(f"matrix is not positive definite: pivot {index} = {pivot!r}")
        self.index = index
        self.pivot = pivot


class AccuracyError(MPSpectraError, ArithmeticError):
    """A numerical procedure could not certify the requested tolerance."""

    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved bound {achieved:.3e})")
        self.achieved = achieved


class ConsistencyError(MPSpectraError, ArithmeticError):
    """Two evaluation routes that must agree did not."""


class DegenerateOutputError(MPSpectraError, ArithmeticError):
    """A result collapsed to zero or a non-finite value."""
