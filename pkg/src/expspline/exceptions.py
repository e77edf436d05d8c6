"""Exception hierarchy; each class maps onto one CLI exit code."""


class ExpSplineError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExpSplineError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ExpSplineError, ValueError):
    """A numerical configuration object violates its invariants."""


class PrecisionError(ExpSplineError, ArithmeticError):
    """A requested accuracy cannot be certified with the given settings."""


class BracketError(ExpSplineError, ValueError):
    """A root-finding bracket does not enclose a sign change."""


class RangeError(ExpSplineError, ValueError):
    """An evaluation point lies outside the reliable range of a model."""


class NotAdmissibleError(ExpSplineError):
    """The spline order is not admissible for the exponential parameter.

    The offending :class:`~expspline.admissibility.AdmissibilityReport` is
    attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SymbolZeroError(ExpSplineError, ArithmeticError):
    """The integer-sample symbol (nearly) vanishes on the unit circle."""


class NearZeroDenominatorError(ExpSplineError, ArithmeticError):
    """The periodised zeta denominator is numerically zero."""
