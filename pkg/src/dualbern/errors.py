"""Exception types shared across the package."""


class DualbernError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(DualbernError, ValueError):
    """Invalid parameters: exponents <= -1, negative constraints, bad degrees."""


class DomainError(DualbernError, ValueError):
    """An index or evaluation point lies outside its admissible domain."""


class DegenerateRecurrenceError(DualbernError, ArithmeticError):
    """A recurrence denominator vanished for the supplied parameters."""


class ConditioningError(DualbernError, RuntimeError):
    """A linear solve could not reach the requested residual accuracy."""


class ConvergenceError(DualbernError, RuntimeError):
    """An adaptive quadrature ladder ran out of headroom before converging."""


class FormatError(DualbernError, ValueError):
    """A patch/table file does not conform to the documented text format."""
