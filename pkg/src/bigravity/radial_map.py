"""The radial map r(m)/r_star, its quadrature factor F(m) and branch inversion.

    r / r_star = |2 + m|^(1/3) |D(m)|^(-1/(2 + m^2)) F(m)
    F(m) = (2 + m^2)^(-1/6) exp(-arctan(m/sqrt2) / (3 sqrt2)) exp(-int_1^m M)
    M(m) = 2m / (2 + m^2)^2 ln|D(m)|

``D`` vanishes at m = 1 and m = m0 and has a simple pole at m = -2, so
``ln|D|`` carries three logarithmic singularities. They are removed
exactly: with ``w(m) = 2m/(2+m^2)^2``,

    ln|D| = R(m) + ln|m - 1| + ln|m - m0| - ln|m + 2|

where ``R`` is smooth, and ``w ln|m - s|`` has the closed-form
antiderivative ``G_s`` below. Only ``w R`` is integrated numerically, by
composite Gauss-Legendre on a fixed global grid whose cumulative sums are
cached.

r(m) is monotone on five intervals of m, the branches I-V; each branch is
parametrized by a chart coordinate ``t`` chosen so that distances to the
branch edges keep full relative precision.
"""
import bisect
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from ._backend import kernels
from .core_maps import _point, POLE_GUARD
from .errors import (
    DomainError,
    LogOfZero,
    NoConvergence,
    OutOfRange,
    PoleAtMinusTwo,
    QuadratureFailure,
)

SQRT2 = math.sqrt(2.0)
GUARD_POLE = 1e-9
GUARD_M0 = 1e-9
# Branches IV and V are charted in ln|m - 1|, which keeps full precision
# arbitrarily close to m = 1; the chart stops where r/r_star ~ 1e10.
CHART_FLAT = 1e-30
M_FAR = 1e6
GL_ORDER = 24
GL_CHECK_ORDER = 32

LOG_F_AT_1 = -math.log(3.0) / 6.0 - math.atan(1.0 / SQRT2) / (3.0 * SQRT2)
P1 = math.sqrt(3.0) / 8.0 * math.exp(math.atan(1.0 / SQRT2) / SQRT2)


class Branch(enum.Enum):
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    BUBBLE = "bubble"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(b.value for b in cls)
            raise DomainError(f"unknown branch {value!r}; expected one of {names}") from None


@dataclass(frozen=True)
class CriticalConstants:
    m0: float
    m_min: float
    A: float
    B: float
    p1: float
    q0: float
    rg_over_L_threshold: float


def _grid():
    far = [4.0 * 2.0 ** j for j in range(1, 19)]
    near = [-4.0 + 0.25 * i for i in range(33)]
    return tuple([-x for x in reversed(far)] + near + far)


_GRID = _grid()
_GRID_INDEX = {g: i for i, g in enumerate(_GRID)}
M_LIMIT = _GRID[-1]


@lru_cache(maxsize=None)
def _gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return np.ascontiguousarray(x), np.ascontiguousarray(w)


@lru_cache(maxsize=1)
def singular_data():
    """(m0, D'(m0), D''(m0)) for the interior zero of D."""
    grid = np.linspace(-1.99, -1.01, 99)
    vals = [kernels.d_value(m, m - 1.0) for m in grid]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa * fb < 0.0:
            break
    else:  # pragma: no cover - fixed by the algebra
        raise NoConvergence("no sign change of D in (-2, -1)")
    m0 = brentq(lambda m: kernels.d_value(m, m - 1.0), a, b, xtol=1e-16, rtol=1e-15)
    d1 = _point(m0).d_prime
    m0 -= kernels.d_value(m0, m0 - 1.0) / d1
    d1 = _point(m0).d_prime
    h = 1e-5
    d2 = (_point(m0 + h).d_prime - _point(m0 - h).d_prime) / (2.0 * h)
    return m0, d1, d2


def _piece(ea, eb, order):
    if ea == eb:
        return 0.0
    x, w = _gauss_legendre(order)
    m0, d1, d2 = singular_data()
    return kernels.piece_sum(ea, eb, x, w, m0, d1, d2)


@lru_cache(maxsize=None)
def _cumulative(anchor_idx, j, order):
    if j == anchor_idx:
        return 0.0
    step = 1 if j > anchor_idx else -1
    prev = j - step
    return _cumulative(anchor_idx, prev, order) + _piece(
        _GRID[prev] - 1.0, _GRID[j] - 1.0, order
    )


def _regular_integral(anchor, m, e, order):
    """int_anchor^m w(x) R(x) dx; ``anchor`` must be a grid point."""
    ai = _GRID_INDEX[anchor]
    if m >= anchor:
        j = bisect.bisect_right(_GRID, m) - 1
    else:
        j = bisect.bisect_left(_GRID, m)
    return _cumulative(ai, j, order) + _piece(_GRID[j] - 1.0, e, order)


def _g_term(x, x_minus_s, s):
    """Antiderivative of w(x) ln|x - s|."""
    c = 1.0 / (s * s + 2.0)
    lead = 0.0
    if x_minus_s != 0.0:
        lead = math.log(abs(x_minus_s)) * x_minus_s * (x + s) * c / (x * x + 2.0)
    return lead - c * (0.5 * math.log(x * x + 2.0) + s / SQRT2 * math.atan(x / SQRT2))


def _singular_sum(x, e):
    m0 = singular_data()[0]
    return _g_term(x, e, 1.0) + _g_term(x, x - m0, m0) - _g_term(x, x + 2.0, -2.0)


def _g_term_from_1(m, e, m_minus_s, s, atan_diff, log_ratio):
    """G_s(m) - G_s(1) without cancellation near m = 1."""
    c = 1.0 / (s * s + 2.0)
    lead = 0.0
    if m_minus_s != 0.0:
        lead = math.log(abs(m_minus_s)) * m_minus_s * (m + s) * c / (m * m + 2.0)
    one_minus_s = 1.0 - s
    if one_minus_s != 0.0:
        lead -= math.log(abs(one_minus_s)) * one_minus_s * (1.0 + s) * c / 3.0
    return lead - c * (0.5 * log_ratio + s / SQRT2 * atan_diff)


def _log_f_ratio(m, e, order=GL_ORDER):
    """ln F(m) - ln F(1) for m > -2."""
    m0 = singular_data()[0]
    log_ratio = math.log1p(e * (2.0 + e) / 3.0)  # ln((2 + m^2)/3)
    atan_diff = math.atan(e / (SQRT2 * (1.0 + 0.5 * m)))  # atan(m/√2) - atan(1/√2)
    singular = (
        _g_term_from_1(m, e, e, 1.0, atan_diff, log_ratio)
        + _g_term_from_1(m, e, m - m0, m0, atan_diff, log_ratio)
        - _g_term_from_1(m, e, m + 2.0, -2.0, atan_diff, log_ratio)
    )
    integral = _regular_integral(1.0, m, e, order) + singular
    return -log_ratio / 6.0 - atan_diff / (3.0 * SQRT2) - integral


def _log_f(m, e, order=GL_ORDER, anchor=None):
    if anchor is None:
        anchor = 1.0 if m > -2.0 else -3.0
    if anchor not in _GRID_INDEX:
        raise DomainError(f"quadrature anchor must be a grid point, got {anchor!r}")
    if (m + 2.0) * (anchor + 2.0) <= 0.0:
        raise PoleAtMinusTwo(f"integration path {anchor!r} -> {m!r} crosses m = -2")
    if abs(m) > M_LIMIT:
        raise DomainError(f"|m| = {abs(m):g} exceeds the tabulated range {M_LIMIT:g}")
    if anchor == 1.0:
        return LOG_F_AT_1 + _log_f_ratio(m, e, order)
    base = -math.log(2.0 + m * m) / 6.0 - math.atan(m / SQRT2) / (3.0 * SQRT2)
    integral = (_regular_integral(anchor, m, e, order)
                + _singular_sum(m, e) - _singular_sum(anchor, anchor - 1.0))
    return base - integral


def integrand_M(m):
    """``2m/(2 + m^2)^2 ln|D(m)|``.

    Raises:
        LogOfZero: exactly at a zero of D (m = 1, m = m0); these are
            integrable endpoint singularities of the F quadrature.
    """
    d = _point(m).d
    if d == 0.0:
        raise LogOfZero(f"D(m) = 0 at m = {m!r}")
    return 2.0 * m / (2.0 + m * m) ** 2 * math.log(abs(d))


def log_F(m, order=GL_ORDER, anchor=None):
    if abs(m + 2.0) < POLE_GUARD:
        raise PoleAtMinusTwo(f"m = {m!r} is at the pole m = -2")
    return _log_f(m, m - 1.0, order, anchor)


def F_of_m(m, tol=1e-10, anchor=None):
    """F(m), checked against a higher-order rule.

    For m < -2 the quadrature starts at m = -3 (the path from 1 would cross
    the pole); pass ``anchor`` explicitly to override.

    Raises:
        QuadratureFailure: if two Gauss-Legendre orders differ by more than
            ``tol`` (absolute).
    """
    low = math.exp(log_F(m, GL_ORDER, anchor))
    high = math.exp(log_F(m, GL_CHECK_ORDER, anchor))
    if not abs(high - low) <= tol:
        raise QuadratureFailure(f"F({m!r}) unresolved: {low!r} vs {high!r}")
    return high


def _log_rho(m, e):
    """ln(r/r_star); +inf at zeros of D, -inf at m = -2."""
    if m == -2.0:
        return -math.inf
    pt = _point(m, e, guard=0.0)
    d = pt.d
    if d == 0.0:
        return math.inf
    return (math.log(abs(2.0 + m)) / 3.0 - math.log(abs(d)) / (2.0 + m * m)
            + _log_f(m, e))


def r_over_rstar(m):
    """r/r_star along the solution family; inf where D = 0, 0 at m = -2."""
    if not math.isfinite(m):
        raise DomainError(f"branch parameter must be finite, got {m!r}")
    return math.exp(_log_rho(m, m - 1.0))


def _dlog_rho_dm(pt):
    m = pt.m
    s = 2.0 + m * m
    return 1.0 / (3.0 * (2.0 + m)) - pt.d_prime / (pt.d * s) - (m + 1.0) / (3.0 * s)


def dlog_rho_dm(m):
    """d ln(r/r_star)/dm in closed form (the quadrature term cancels)."""
    return _dlog_rho_dm(_point(m))


# ---------------------------------------------------------------- branches

def branch_interval(branch):
    """Open m-interval of a branch (the bubble is the single point m0)."""
    branch = Branch.parse(branch)
    m0 = singular_data()[0]
    m_min = _m_min()
    return {
        Branch.I: (-math.inf, -2.0),
        Branch.II: (-2.0, m0),
        Branch.III: (m0, m_min),
        Branch.IV: (m_min, 1.0),
        Branch.V: (1.0, math.inf),
        Branch.BUBBLE: (m0, m0),
    }[branch]


def branch_of(m):
    m0 = singular_data()[0]
    m_min = _m_min()
    if m < -2.0:
        return Branch.I
    if m < m0:
        return Branch.II
    if m < m_min:
        return Branch.III
    if m < 1.0:
        return Branch.IV
    return Branch.V


def _sigmoid(t):
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    z = math.exp(t)
    return z / (1.0 + z)


@dataclass(frozen=True)
class _Chart:
    branch: Branch
    t_lo: float
    t_hi: float
    a: float = 0.0
    b: float = 0.0

    def point(self, t):
        """(m, e) at chart coordinate t."""
        br = self.branch
        if br is Branch.IV:
            e = -math.exp(t)
            return 1.0 + e, e
        if br is Branch.V:
            e = math.exp(t)
            return 1.0 + e, e
        if br is Branch.I:
            z = math.exp(t)
            return -2.0 - z, -3.0 - z
        w = self.b - self.a
        if t <= 0.0:
            m = self.a + w * _sigmoid(t)
        else:
            m = self.b - w * _sigmoid(-t)
        return m, m - 1.0

    def dm_dt(self, t):
        br = self.branch
        if br in (Branch.IV, Branch.V, Branch.I):
            return self.point(t)[1] if br is not Branch.I else -math.exp(t)
        s = _sigmoid(t)
        return (self.b - self.a) * s * (1.0 - s)

    def coordinate(self, m):
        br = self.branch
        if br in (Branch.IV, Branch.V):
            return math.log(abs(m - 1.0))
        if br is Branch.I:
            return math.log(-2.0 - m)
        return math.log((m - self.a) / (self.b - m))


@lru_cache(maxsize=None)
def chart(branch):
    branch = Branch.parse(branch)
    m0 = singular_data()[0]
    m_min = _m_min()
    if branch is Branch.I:
        return _Chart(branch, math.log(GUARD_POLE), math.log(M_FAR - 2.0))
    if branch is Branch.II:
        w = m0 + 2.0
        return _Chart(branch, math.log(GUARD_POLE / (w - GUARD_POLE)),
                      math.log((w - GUARD_M0) / GUARD_M0), -2.0, m0)
    if branch is Branch.III:
        w = m_min - m0
        return _Chart(branch, math.log(GUARD_M0 / (w - GUARD_M0)), 40.0, m0, m_min)
    if branch is Branch.IV:
        return _Chart(branch, math.log(CHART_FLAT), math.log(1.0 - m_min))
    if branch is Branch.V:
        return _Chart(branch, math.log(CHART_FLAT), math.log(M_FAR - 1.0))
    raise DomainError("the bubble solution has no radial map")


def branch_image(branch):
    """(min, max) of r/r_star reachable on a branch within its guard bands."""
    ch = chart(branch)
    lo = math.exp(_log_rho(*ch.point(ch.t_lo)))
    hi = math.exp(_log_rho(*ch.point(ch.t_hi)))
    return (lo, hi) if lo <= hi else (hi, lo)


def _invert(branch, rho):
    """(m, e, t) with r/r_star(m) = rho on ``branch``."""
    ch = chart(branch)
    if not rho > 0.0 or not math.isfinite(rho):
        raise OutOfRange(f"r/r_star must be positive and finite, got {rho!r}")
    target = math.log(rho)

    def resid(t):
        return _log_rho(*ch.point(t)) - target

    f_lo, f_hi = resid(ch.t_lo), resid(ch.t_hi)
    for t_edge, f_edge in ((ch.t_lo, f_lo), (ch.t_hi, f_hi)):
        if abs(f_edge) <= 1e-13:
            m, e = ch.point(t_edge)
            return m, e, t_edge
    if f_lo * f_hi > 0.0:
        lo, hi = branch_image(branch)
        raise OutOfRange(
            f"r/r_star = {rho!r} outside branch {branch.value.upper()} "
            f"image [{lo:.17g}, {hi:.17g}]"
        )
    try:
        t = brentq(resid, ch.t_lo, ch.t_hi, xtol=1e-14, rtol=1e-15, maxiter=400)
    except RuntimeError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    m, e = ch.point(t)
    return m, e, t


def invert_r(branch, rho):
    """Branch parameter m with r/r_star(m) = rho on the given branch.

    Raises:
        OutOfRange: if rho lies outside the branch image.
    """
    return _invert(Branch.parse(branch), rho)[0]


# ---------------------------------------------------------------- constants

@lru_cache(maxsize=1)
def _m_min():
    def md(m):
        pt = _point(m)
        return pt.dp - pt.alpha1 - 2.0 * pt.a2m1

    return brentq(md, -1.5, -1.2, xtol=1e-16, rtol=1e-15)


def _second_derivative(fn, x, h):
    return (-fn(x + 2 * h) + 16 * fn(x + h) - 30 * fn(x)
            + 16 * fn(x - h) - fn(x - 2 * h)) / (12 * h * h)


@lru_cache(maxsize=1)
def critical_constants():
    """Numerical constants of the solution family, computed from scratch."""
    m0 = singular_data()[0]
    m_min = _m_min()
    a = r_over_rstar(m_min)
    h = 1e-3
    d_h = _second_derivative(r_over_rstar, m_min, h)
    d_h2 = _second_derivative(r_over_rstar, m_min, h / 2)
    b = 0.5 * (16.0 * d_h2 - d_h) / 15.0
    alpha1_min = _point(m_min).alpha1
    q0 = 4.0 * a * a * P1 ** (2.0 / 3.0) * (1.0 - alpha1_min)
    return CriticalConstants(
        m0=m0,
        m_min=m_min,
        A=a,
        B=b,
        p1=P1,
        q0=q0,
        rg_over_L_threshold=q0 ** -1.5,
    )
