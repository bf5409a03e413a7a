"""Exception types raised across the package."""


class PicfError(Exception):
    """Base class for all errors raised by :mod:`picf`."""


class InvalidInputError(PicfError, ValueError):
    """Arguments violate a documented precondition (square radicand, degenerate parameters...)."""


class DivergenceError(InvalidInputError):
    """The periodic continued fraction has no value (convergence certificate rejected)."""


class DegenerateValueError(InvalidInputError):
    """The lower-left entry of the E-matrix vanishes, so the eigenvalue formula does not apply."""


class NonIntegralQuotientError(PicfError, ArithmeticError):
    """An exact division in a ring left a non-integral quotient."""


class NotAUnitError(InvalidInputError):
    """A pair (x, y) does not satisfy x^2 - m*y^2 = +-1."""


class VerificationError(PicfError):
    """An exact identity that must hold did not."""
