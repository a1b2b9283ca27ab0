"""Exception types.

Two families matter to callers: :class:`DomainError` (the input lies outside
where a formula is defined) and :class:`ConvergenceError` (a numerical
procedure failed to reach its tolerance). The CLI maps them to exit codes
3 and 2.
"""


class BIGravityError(Exception):
    pass


class DomainError(BIGravityError, ValueError):
    pass


class ConvergenceError(BIGravityError, ArithmeticError):
    pass


class PoleAtMinusTwo(DomainError):
    pass


class NegativeRadicand(DomainError):
    pass


class DegenerateDenominator(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class LogOfZero(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class BoundaryDivergence(DomainError):
    pass


class DomainTooSmall(DomainError):
    pass


class DomainTooLarge(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class NonPositiveRadius(DomainError):
    pass


class QuadratureFailure(ConvergenceError):
    pass


class NoConvergence(ConvergenceError):
    pass
