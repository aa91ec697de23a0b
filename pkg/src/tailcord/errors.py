"""Exception types raised across the package."""


class TailcordError(Exception):
    """Base class for all package errors."""


class InvalidModelError(TailcordError, ValueError):
    """Model parameters are missing, out of range, or used on the wrong scale."""


class DomainError(TailcordError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedFamilyError(TailcordError, ValueError):
    """The operation has no meaning for the given model family."""


class ConditioningError(TailcordError, ArithmeticError):
    """The conditioning event has probability below the guard threshold."""


class PrecisionError(TailcordError, ArithmeticError):
    """Double precision cannot represent the requested quantity."""


class EstimationError(TailcordError, ValueError):
    """An estimator was asked to condition on an empty set."""


class ValidationError(TailcordError, ValueError):
    """Replicate records cannot be compared against a single surface."""


class QuadratureError(TailcordError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    decide whether it is usable.
    """

    def __init__(self, message, value, error):
        super().__init__(message)
        self.value = value
        self.error = error
