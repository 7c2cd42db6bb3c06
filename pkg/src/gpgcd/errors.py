"""Exception hierarchy shared by the solver, extraction and CLI layers."""


class GpgcdError(Exception):
    """Base class for all errors raised by this package."""


class InvalidProblemError(GpgcdError, ValueError):
    """Input polynomials or target degree violate the problem preconditions."""


class RankDeficientError(GpgcdError, ArithmeticError):
    """A least-squares matrix lacks full column rank."""


class SingularSystemError(GpgcdError, ArithmeticError):
    """The Newton system has no solution: the linearized constraints are inconsistent.

    This happens when the constraint Jacobian loses rank in a direction the
    constraint residual points along, e.g. when the iterate's polynomials
    acquire a common factor of degree greater than the target, or a cofactor
    collapses to a constant.
    """


class DegenerateCofactorError(GpgcdError, ArithmeticError):
    """A cofactor is numerically zero, so no GCD can be divided out of it."""
