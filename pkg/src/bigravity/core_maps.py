"""Algebraic structure of the static spherically symmetric ansatz.

Everything here is a closed-form function of the branch parameter ``m``:
the cubic root ``k = alpha1/alpha2``, the structure functions ``alpha1``,
``alpha2``, their m-derivatives, the f-function and the residuals whose
zeros define the bubble root ``m0`` and the boundary point ``m_min``.

Internally two auxiliary functions are used because they stay finite at
the pole m = -2::

    Q(m) = (2 + m) * alpha2 = sqrt(15) * sqrt((m k + 2) / (k^2 + 4))
    P(m) = (2 + m) * alpha1 = k * Q
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

from ._backend import kernels
from .errors import (
    DegenerateDenominator,
    DivisionByZero,
    DomainError,
    NegativeRadicand,
    PoleAtMinusTwo,
)

POLE_GUARD = 1e-9
_DENOM_FLOOR = 1e-14


@dataclass(frozen=True)
class AlgebraicState:
    m: float
    k: float
    alpha1: float
    alpha2: float
    dalpha1_dm: float
    dalpha2_dm: float


class _Point(NamedTuple):
    m: float
    e: float
    k: float
    kappa: float  # k - 1
    q: float
    a1m1: float  # alpha1 - 1
    a2m1: float  # alpha2 - 1
    dk: float
    dq: float
    p: float
    dp: float

    @property
    def alpha1(self):
        if abs(self.e) < kernels.OFFSET_BAND:
            return 1.0 + self.a1m1
        return self.p / (2.0 + self.m)

    @property
    def alpha2(self):
        if abs(self.e) < kernels.OFFSET_BAND:
            return 1.0 + self.a2m1
        return self.q / (2.0 + self.m)

    @property
    def dalpha1(self):
        return (self.dp - self.p / (2.0 + self.m)) / (2.0 + self.m)

    @property
    def dalpha2(self):
        return (self.dq - self.q / (2.0 + self.m)) / (2.0 + self.m)

    @property
    def d(self):
        """m(alpha2 - 1) - (alpha1 - 1)."""
        if abs(self.e) < kernels.OFFSET_BAND:
            return self.m * self.a2m1 - self.a1m1
        return self.q * (self.m - self.k) / (2.0 + self.m) - self.e

    @property
    def d_prime(self):
        return self.a2m1 + self.m * self.dalpha2 - self.dalpha1


def _check(m, guard=POLE_GUARD):
    if not math.isfinite(m):
        raise DomainError(f"branch parameter must be finite, got {m!r}")
    if abs(m + 2.0) < guard:
        raise PoleAtMinusTwo(f"m = {m!r} lies within {guard:g} of the pole at m = -2")


def _point(m, e=None, guard=POLE_GUARD):
    """Full algebraic record at ``m``; ``e`` overrides ``m - 1`` when given."""
    _check(m, guard)
    if e is None:
        e = m - 1.0
    k, kappa, q, a1m1, a2m1 = kernels.state(m, e)
    if m * k + 2.0 < 0.0:
        raise NegativeRadicand(f"m k + 2 = {m * k + 2.0!r} < 0 at m = {m!r}")
    denom = (3.0 * k - 2.0 * m / 3.0) * k + 2.0 / 3.0
    if abs(denom) < _DENOM_FLOOR:
        raise DegenerateDenominator(f"cubic has a repeated root near m = {m!r}")
    dk, dq, p, dp = kernels.derivs(m, k, q)
    return _Point(m, e, k, kappa, q, a1m1, a2m1, dk, dq, p, dp)


def solve_k(m):
    """Unique real root of ``k^3 - (m/3) k^2 + (2/3) k - 4m/3 = 0``.

    Cardano's formula with signed real cube roots, polished by Newton steps.
    """
    if not math.isfinite(m):
        raise DomainError(f"branch parameter must be finite, got {m!r}")
    return kernels.solve_k(m)


def cubic_residual(m, k):
    """Residual of the cubic scaled by ``max(1, |k|^3)``."""
    r = k ** 3 - (m / 3.0) * k ** 2 + (2.0 / 3.0) * k - 4.0 * m / 3.0
    return r / max(1.0, abs(k) ** 3)


def dk_dm(m):
    pt = _point(m, guard=0.0)
    return pt.dk


def alphas(m, guard=POLE_GUARD):
    """Structure functions ``(alpha1, alpha2)`` at ``m``.

    Raises:
        PoleAtMinusTwo: if ``|m + 2| < guard``.
    """
    pt = _point(m, guard=guard)
    return pt.alpha1, pt.alpha2


def dalphas_dm(m, guard=POLE_GUARD):
    """``(d alpha1/dm, d alpha2/dm)`` by implicit differentiation of the cubic."""
    pt = _point(m, guard=guard)
    return pt.dalpha1, pt.dalpha2


def algebraic_state(m, guard=POLE_GUARD):
    pt = _point(m, guard=guard)
    return AlgebraicState(m, pt.k, pt.alpha1, pt.alpha2, pt.dalpha1, pt.dalpha2)


def compatibility_residual(m, guard=POLE_GUARD):
    """``alpha2' + (m/2) alpha1' + (alpha2 - alpha1)/(2 + m)``; identically zero.

    Evaluated as ``[Q' + (m P' - P)/2] / (2 + m)``, which is the same
    expression with the O((2+m)^-2) terms cancelled by hand.
    """
    pt = _point(m, guard=guard)
    return (pt.dq + 0.5 * (m * pt.dp - pt.p)) / (2.0 + m)


def compatibility_terms(m, guard=POLE_GUARD):
    """The three terms of the compatibility sum, unsimplified."""
    pt = _point(m, guard=guard)
    return pt.dalpha2, 0.5 * m * pt.dalpha1, (pt.alpha2 - pt.alpha1) / (2.0 + m)


def structure_f(m, r_over_L):
    """``f = 1 + 4 (r/L)^2 (alpha1 - 1)``."""
    pt = _point(m)
    return 1.0 + 4.0 * r_over_L * r_over_L * pt.a1m1


def structure_defect(m):
    """``D(m) = m(alpha2 - 1) - (alpha1 - 1)``, the argument of the log in M(m)."""
    return _point(m).d


def structure_defect_prime(m):
    return _point(m).d_prime


def ratio_defect(m):
    """``m - (alpha1 - 1)/(alpha2 - 1)``; zero at the constant-m solution."""
    pt = _point(m)
    if abs(pt.a2m1) < _DENOM_FLOOR:
        raise DivisionByZero(f"alpha2 - 1 = {pt.a2m1!r} at m = {m!r}")
    return m - pt.a1m1 / pt.a2m1


def minimization_defect(m):
    """``(2 + m) alpha1' - 2(alpha2 - 1)``; zero where dr/dm = 0."""
    pt = _point(m)
    return pt.dp - pt.alpha1 - 2.0 * pt.a2m1
