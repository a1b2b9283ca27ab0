"""Curvature of the static metrics and the boundary-regularity probe.

For ds^2 = e^(2 lambda) dt^2 - e^(2 nu) dr^2 - r^2 dOmega^2 the orthonormal
frame Riemann tensor has four independent sectional values

    R^{01}_{01} =  K1 = e^(-2nu) (lambda'' + lambda'^2 - lambda' nu')
    R^{0s}_{0s} =  K2 = e^(-2nu) lambda' / r
    R^{1s}_{1s} = -K3 = -e^(-2nu) nu' / r
    R^{23}_{23} = -K4 = -(1 - e^(-2nu)) / r^2

so that the Kretschmann scalar is 4(K1^2 + 2K2^2 + 2K3^2 + K4^2).

Along a solution branch r'(m) vanishes at m_min, so derivatives in r are
ill-conditioned near the boundary. The same four values are therefore
computed in the smooth branch chart coordinate t, with
H = -g11 (dr/dt)^2 the metric coefficient of dt^2 in place of e^(2nu); the
divergent pieces of lambda'' and lambda' nu' then never appear.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import radial_map as rm
from .core_maps import _point
from .errors import DomainError, NonPositiveRadius, OutOfDomain
from .metric import Branch, _log_g00_over_f

STEP = 1e-3


class FrameCurvature(NamedTuple):
    k1: float
    k2: float
    k3: float
    k4: float


@dataclass(frozen=True)
class InvariantSample:
    r: float
    kretschmann: float
    cubic_invariant: float


@dataclass(frozen=True)
class ConnectionScalars:
    a0: float
    a2: float


def frame_curvature(lam, nu, dlam_dr, dnu_dr, d2lam_dr2, r):
    """Sectional components (K1, K2, K3, K4) from lambda(r), nu(r).

    Raises:
        NonPositiveRadius: if r <= 0.
    """
    if not r > 0.0:
        raise NonPositiveRadius(f"r must be positive, got {r!r}")
    w = math.exp(-2.0 * nu)
    return FrameCurvature(
        w * (d2lam_dr2 + dlam_dr ** 2 - dlam_dr * dnu_dr),
        w * dlam_dr / r,
        w * dnu_dr / r,
        (1.0 - w) / (r * r),
    )


def riemann_tensor(k):
    """Mixed frame components R^{ab}_{cd} as a (4, 4, 4, 4) array."""
    k1, k2, k3, k4 = k
    sect = {(0, 1): k1, (0, 2): k2, (0, 3): k2, (1, 2): -k3, (1, 3): -k3, (2, 3): -k4}
    riem = np.zeros((4, 4, 4, 4))
    for (a, b), v in sect.items():
        riem[a, b, a, b] = v
        riem[b, a, b, a] = v
        riem[a, b, b, a] = -v
        riem[b, a, a, b] = -v
    return riem


def kretschmann(k):
    riem = riemann_tensor(k)
    return float(np.einsum("abcd,cdab->", riem, riem))


def cubic_invariant(k):
    """R^{cd}_{ab} R^{ab}_{eh} R^{eh}_{cd}."""
    riem = riemann_tensor(k)
    return float(np.einsum("abcd,cdef,efab->", riem, riem, riem))


# ------------------------------------------------------------ along a branch

class _ChartState(NamedTuple):
    m: float
    r: float
    r_t: float
    lam: float
    lam_t: float
    sigma: float
    f: float
    g11: float


def _chart_state(params, ch, t):
    m, e = ch.point(t)
    pt = _point(m, e)
    m_t = ch.dm_dt(t)
    d = pt.d
    r = params.r_star * math.exp(rm._log_rho(m, e))
    r_m = r * rm._dlog_rho_dm(pt)
    s = 2.0 + m * m
    f = 1.0 + 4.0 * (r / params.L) ** 2 * pt.a1m1
    f_m = 4.0 / params.L ** 2 * (2.0 * r * r_m * pt.a1m1 + r * r * pt.dalpha1)
    ln_d = math.log(abs(d))
    c = -2.0 * e * (m + 1.0) / s
    c_m = -12.0 * m / (s * s)
    mm = 2.0 * m / (s * s) * ln_d
    dlng00 = f_m / f + c_m * ln_d + c * pt.d_prime / d + 6.0 * ((m + 1.0) / (3.0 * s) + mm)
    lam = 0.5 * (math.log(abs(f)) + _log_g00_over_f(m, e, d, True))
    n1 = m * pt.dp - pt.p + 2.0
    n2 = pt.dp - pt.alpha1 - 2.0 * pt.a2m1
    g11 = -(n1 / n2) ** 2 / f
    r_t = r_m * m_t
    sigma = 0.5 * math.log(abs(g11)) + math.log(abs(r_t))
    return _ChartState(m, r, r_t, lam, 0.5 * dlng00 * m_t, sigma, f, g11)


def _stencil(fn, t, h):
    vals = [fn(t + j * h) for j in (-2, -1, 1, 2)]
    return vals


def _d1(v, h):
    return (v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h)


def _chart_curvature(params, ch, t, h=STEP):
    st = _chart_state(params, ch, t)
    if not st.f > 0.0:
        raise OutOfDomain(f"f = {st.f!r} <= 0 at r = {st.r!r}: outside the signature-valid window")
    nb = _stencil(lambda s: _chart_state(params, ch, s), t, h)
    r_tt = _d1([s.r_t for s in nb], h)
    lam_tt = _d1([s.lam_t for s in nb], h)
    sigma_t = _d1([s.sigma for s in nb], h)
    big_h = math.exp(2.0 * st.sigma)
    r = st.r
    k = FrameCurvature(
        (lam_tt + st.lam_t ** 2 - st.lam_t * sigma_t) / big_h,
        st.lam_t * st.r_t / (big_h * r),
        (sigma_t * st.r_t - r_tt) / (big_h * r),
        (1.0 + 1.0 / st.g11) / (r * r),
    )
    return st, k


def frame_curvature_at(params, m, h=STEP):
    """(K1, K2, K3, K4) on ``params.branch`` at branch parameter m."""
    ch = rm.chart(params.branch)
    return _chart_curvature(params, ch, ch.coordinate(m), h)[1]


def invariants_along_ray(params, r_list, h=STEP):
    """Kretschmann and cubic invariants at each radius on ``params.branch``.

    Raises:
        OutOfDomain: where f <= 0 (outside the signature-valid window).
    """
    if params.branch is Branch.BUBBLE:
        raise DomainError("use bubble_invariants for the constant-m solution")
    out = []
    ch = rm.chart(params.branch)
    for r in r_list:
        if not r > 0.0:
            raise NonPositiveRadius(f"r must be positive, got {r!r}")
        if params.r_star == 0.0:
            out.append(InvariantSample(r, 0.0, 0.0))
            continue
        _, _, t = rm._invert(params.branch, r / params.r_star)
        _, k = _chart_curvature(params, ch, t, h)
        out.append(InvariantSample(r, kretschmann(k), cubic_invariant(k)))
    return out


def radial_derivatives(params, m, h=STEP):
    """(lambda', nu', lambda'') with respect to r, by the chain rule through t."""
    ch = rm.chart(params.branch)
    t = ch.coordinate(m)
    st = _chart_state(params, ch, t)
    nb = _stencil(lambda s: _chart_state(params, ch, s), t, h)
    lam_tt = _d1([s.lam_t for s in nb], h)
    r_tt = _d1([s.r_t for s in nb], h)
    nu_t = _d1([0.5 * math.log(abs(s.g11)) for s in nb], h)
    lam_r = st.lam_t / st.r_t
    lam_rr = (lam_tt * st.r_t - st.lam_t * r_tt) / st.r_t ** 3
    return lam_r, nu_t / st.r_t, lam_rr


def bubble_curvature(r, L=1.0):
    """(K1, K2, K3, K4) of the bubble metric in closed form."""
    from .metric import bubble_params

    bp = bubble_params(L)
    if not 0.0 < r < bp.r0:
        raise OutOfDomain(f"bubble curvature defined for 0 < r < r0 = {bp.r0!r}")
    y2 = (r / bp.r0) ** 2
    a = bp.m0 * bp.m0
    # lambda = (a - 1) ln r + 1/2 ln(1 - y^2) + const
    lam_r = (a - 1.0) / r - y2 / (r * (1.0 - y2))
    lam_rr = -(a - 1.0) / r ** 2 - (y2 * (1.0 + y2)) / (r * r * (1.0 - y2) ** 2)
    nu = 0.5 * math.log(a / (1.0 - y2))
    nu_r = y2 / (r * (1.0 - y2))
    return frame_curvature(0.0, nu, lam_r, nu_r, lam_rr, r)


# ------------------------------------------------------ spinor cross-check

def _connection(params, ch, t):
    st = _chart_state(params, ch, t)
    m, r = st.m, st.r
    m_r = ch.dm_dt(t) / st.r_t
    lam_r = st.lam_t / st.r_t
    e_nu = math.sqrt(-st.g11)
    a0 = 0.5 * math.exp(st.lam) / e_nu * (lam_r - m_r * (1.0 + m) / (2.0 + m) - (m * m - 1.0) / r)
    a2 = 0.5 - 0.5 / e_nu * (m + r * m_r / (2.0 + m))
    return st, a0, a2


def connection_scalars(params, m):
    """Spin-connection scalars (a0, a2) at branch parameter m."""
    ch = rm.chart(params.branch)
    _, a0, a2 = _connection(params, ch, ch.coordinate(m))
    return ConnectionScalars(a0, a2)


def spinor_curvature(params, m, h=STEP):
    """(rho01, rho0s, rho1s, rho23) built from a0, a2 and their r-derivatives."""
    ch = rm.chart(params.branch)
    t = ch.coordinate(m)
    st, a0, a2 = _connection(params, ch, t)
    nb = [_connection(params, ch, t + j * h) for j in (-2, -1, 1, 2)]
    a0_r = _d1([x[1] for x in nb], h) / st.r_t
    a2_r = _d1([x[2] for x in nb], h) / st.r_t
    e_lam = math.exp(st.lam)
    e_nu = math.sqrt(-st.g11)
    r = st.r
    return (
        -a0_r / (e_lam * e_nu),
        a0 * (2.0 * a2 - 1.0) / (e_lam * r),
        a2_r / (e_nu * r),
        2.0 * a2 * (1.0 - a2) / (r * r),
    )
