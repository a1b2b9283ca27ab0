"""Metric components of the static solution family.

On every branch the metric is parametrized by m through r = r_star rho(m),
with rho = r_over_rstar. In terms of

    D  = m(alpha2 - 1) - (alpha1 - 1)
    N1 = m(2 + m) alpha1' - 2(alpha1 - 1)
    N2 = (2 + m) alpha1' - 2(alpha2 - 1)

the components are

    g00 = (r_star/r)^6 f (2 + m)^2 / D^2
        = f exp[(6/(2 + m^2) - 2) ln|D| - 6 ln F(m)]
    g11 = -f^-1 N1^2 / N2^2

with f = 1 + 4 (r/L)^2 (alpha1 - 1). The raw g00 tends to F(1)^6 as r -> oo;
by default it is divided by that constant so that g00 -> 1 at infinity.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from scipy.optimize import brentq

from . import radial_map as rm
from .core_maps import _point
from .errors import (
    BoundaryDivergence,
    DomainError,
    DomainTooLarge,
    DomainTooSmall,
    NoConvergence,
    OutOfDomain,
)
from .radial_map import Branch

BOUNDARY_GUARD = 1e-9
BOUNDARY_WINDOW = 0.1
ASYMPTOTIC_FLOOR = 10.0

SOURCE_EXACT = "exact"
SOURCE_SCHWARZSCHILD = "schwarzschild_asymptotic"
SOURCE_BOUNDARY = "boundary_asymptotic"
SOURCE_BUBBLE = "bubble"


@dataclass(frozen=True)
class ModelParams:
    """Length scale, mass and branch of one solution.

    Give either ``r_g`` (then r_star^3 = p1 r_g L^2) or the raw integration
    constant ``r_star``.
    """

    L: float = 1.0
    r_g: Optional[float] = None
    r_star: Optional[float] = None
    branch: Branch = Branch.IV

    def __post_init__(self):
        if not (math.isfinite(self.L) and self.L > 0.0):
            raise DomainError(f"L must be positive and finite, got {self.L!r}")
        object.__setattr__(self, "branch", Branch.parse(self.branch))
        if self.r_g is None and self.r_star is None:
            raise DomainError("one of r_g or r_star is required")
        if self.r_g is not None:
            if not (math.isfinite(self.r_g) and self.r_g >= 0.0):
                raise DomainError(f"r_g must be finite and >= 0, got {self.r_g!r}")
            implied = (rm.P1 * self.r_g * self.L ** 2) ** (1.0 / 3.0)
            if self.r_star is None:
                object.__setattr__(self, "r_star", implied)
            elif abs(self.r_star ** 3 - implied ** 3) > 1e-12 * self.r_g * self.L ** 2:
                raise DomainError("r_star and r_g are inconsistent")
        elif not (math.isfinite(self.r_star) and self.r_star >= 0.0):
            raise DomainError(f"r_star must be finite and >= 0, got {self.r_star!r}")

    @property
    def r_corr(self):
        """Correction scale r_* with r_*^6 = r_g^2 L^4 / 80."""
        if self.r_g is None:
            raise DomainError("r_* needs r_g")
        return (self.r_g ** 2 * self.L ** 4 / 80.0) ** (1.0 / 6.0)


@dataclass(frozen=True)
class MetricSample:
    r: float
    m: float
    g00: float
    g11: float
    f: float
    valid_signature: bool
    source: str


@dataclass(frozen=True)
class BoundaryPrefactors:
    """g00 -> c00 f(m_min) (raw normalization) and g11 -> -c11 / (f x)."""

    c00: float
    c11: float
    g00_scale: float

    @property
    def c00_normalized(self):
        return self.c00 * self.g00_scale


@dataclass(frozen=True)
class BubbleParams:
    m0: float
    alpha1_m0: float
    r0: float
    volume: float


@dataclass(frozen=True)
class InteriorScan:
    branch: Branch
    r_star: float
    samples: tuple
    slope_g00: Optional[float]
    slope_g11: Optional[float]
    valid_windows: tuple
    note: str = field(default="g00 normalized by F(1)^6; absolute interior normalization is a convention")


def _sample(r, m, g00, g11, f, source):
    return MetricSample(r, m, g00, g11, f, bool(g00 > 0.0 and g11 < 0.0), source)


def _log_g00_over_f(m, e, d, normalized):
    coeff = -2.0 * e * (m + 1.0) / (2.0 + m * m)  # 6/(2+m^2) - 2
    if m > -2.0:
        log_f = rm._log_f_ratio(m, e)
        if not normalized:
            log_f += rm.LOG_F_AT_1
    else:
        log_f = rm._log_f(m, e)
        if normalized:
            log_f -= rm.LOG_F_AT_1
    return coeff * math.log(abs(d)) - 6.0 * log_f


def _evaluate(params, m, e, normalized=True):
    m_min = rm._m_min()
    if abs(m - m_min) < BOUNDARY_GUARD:
        raise BoundaryDivergence(
            f"m = {m!r} within {BOUNDARY_GUARD:g} of m_min; use boundary_asymptotic"
        )
    pt = _point(m, e)
    d = pt.d
    if d == 0.0:
        raise OutOfDomain(f"r is infinite at m = {m!r}")
    r = params.r_star * math.exp(rm._log_rho(m, e))
    f = 1.0 + 4.0 * (r / params.L) ** 2 * pt.a1m1
    g00 = f * math.exp(_log_g00_over_f(m, e, d, normalized))
    n1 = m * pt.dp - pt.p + 2.0
    n2 = pt.dp - pt.alpha1 - 2.0 * pt.a2m1
    g11 = -math.inf if f == 0.0 else -(n1 / n2) ** 2 / f
    return _sample(r, m, g00, g11, f, SOURCE_EXACT)


def exact_metric(params, m, normalized=True):
    """Exact (g00, g11, f) at branch parameter m.

    Raises:
        BoundaryDivergence: within 1e-9 of m_min, where g11 diverges.
    """
    if params.branch is Branch.BUBBLE:
        raise DomainError("use bubble_metric for the constant-m solution")
    return _evaluate(params, m, m - 1.0, normalized)


def metric_at_r(params, r, normalized=True):
    """Exact metric at radius r on ``params.branch``."""
    if not r > 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    if params.r_star == 0.0:
        return _sample(r, 1.0, 1.0, -1.0, 1.0, SOURCE_EXACT)
    m, e, _ = rm._invert(params.branch, r / params.r_star)
    sample = _evaluate(params, m, e, normalized)
    return MetricSample(r, sample.m, sample.g00, sample.g11, sample.f,
                        sample.valid_signature, sample.source)


def schwarzschild_asymptotic(params, r):
    """Large-r expansion; corrections start at r_*^6 / r^6.

    Raises:
        DomainTooSmall: if r <= 10 r_*.
    """
    rc = params.r_corr
    if not r > ASYMPTOTIC_FLOOR * rc or r <= 0.0:
        raise DomainTooSmall(f"r = {r!r} not above {ASYMPTOTIC_FLOOR:g} r_* = {ASYMPTOTIC_FLOOR * rc!r}")
    x = rc ** 6 / r ** 6
    s = 1.0 - (params.r_g / r) * (1.0 - x)
    g00 = (1.0 + 3.0 * x) * s
    g11 = -(1.0 - 9.0 * x) / s
    f = 1.0 - params.r_g / r
    return _sample(r, math.nan, g00, g11, f, SOURCE_SCHWARZSCHILD)


def _n2(m):
    pt = _point(m)
    return pt.dp - pt.alpha1 - 2.0 * pt.a2m1


@lru_cache(maxsize=1)
def boundary_prefactors():
    """Prefactors of the metric near the boundary r = r_min, from first principles."""
    cc = rm.critical_constants()
    m = cc.m_min
    pt = _point(m)
    c00 = math.exp(_log_g00_over_f(m, m - 1.0, pt.d, normalized=False))
    h = 1e-4
    n2_prime = (-_n2(m + 2 * h) + 8 * _n2(m + h) - 8 * _n2(m - h) + _n2(m - 2 * h)) / (12 * h)
    n1 = m * pt.dp - pt.p + 2.0
    c11 = n1 * n1 * cc.B / (cc.A * n2_prime * n2_prime)
    return BoundaryPrefactors(c00=c00, c11=c11, g00_scale=math.exp(6.0 * rm.LOG_F_AT_1))


def f_at_boundary(params):
    """f(m_min) = 1 - q0 (r_g/L)^(2/3) for r_star fixed by r_g."""
    cc = rm.critical_constants()
    r_min = cc.A * params.r_star
    return 1.0 + 4.0 * (r_min / params.L) ** 2 * _point(cc.m_min).a1m1


def boundary_radius(params):
    """r_min = A r_star, the minimal radius of branches III and IV."""
    return rm.critical_constants().A * params.r_star


def boundary_asymptotic(params, r, normalized=True):
    """Leading behaviour for 0 < r/r_min - 1 < 0.1.

    Raises:
        DomainTooLarge: if r/r_min - 1 >= 0.1.
        OutOfDomain: if r <= r_min.
    """
    x = r / boundary_radius(params) - 1.0
    if x >= BOUNDARY_WINDOW:
        raise DomainTooLarge(f"r/r_min - 1 = {x!r} outside (0, {BOUNDARY_WINDOW:g})")
    if not x > 0.0:
        raise OutOfDomain(f"r = {r!r} is not above r_min")
    pre = boundary_prefactors()
    f = f_at_boundary(params)
    c00 = pre.c00_normalized if normalized else pre.c00
    g11 = -math.inf if f == 0.0 else -pre.c11 / (f * x)
    return _sample(r, rm._m_min(), c00 * f, g11, f, SOURCE_BOUNDARY)


def _f_on_chart(params, ch, t):
    m, e = ch.point(t)
    r = params.r_star * math.exp(rm._log_rho(m, e))
    return 1.0 + 4.0 * (r / params.L) ** 2 * _point(m, e).a1m1


def _f_roots(params, branch, n=400):
    """Chart coordinates of the sign changes of f on a branch."""
    ch = rm.chart(branch)
    step = (ch.t_hi - ch.t_lo) / n
    ts = [ch.t_lo + i * step for i in range(n)] + [ch.t_hi]
    vals = [_f_on_chart(params, ch, t) for t in ts]
    roots = []
    for a, b, fa, fb in zip(ts[:-1], ts[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(brentq(lambda t: _f_on_chart(params, ch, t), a, b,
                                xtol=1e-15, rtol=1e-15))
    return ch, roots


def find_horizon(params, dps=None):
    """Radius where f = 0 on branch IV, or None if f(m_min) >= 0.

    The shift r_h - r_g is of order r_g (L/r_g)^4; pass ``dps`` to resolve
    it with the extended-precision route. Left as None, the extended route
    is used automatically when the shift falls below 1e-9 r_g; ``dps=0``
    keeps the double-precision result.
    """
    if params.r_g is None or params.r_g == 0.0:
        return None
    if f_at_boundary(params) >= 0.0:
        return None
    ch = rm.chart(Branch.IV)
    fa = _f_on_chart(params, ch, ch.t_lo)
    fb = _f_on_chart(params, ch, ch.t_hi)
    if fa * fb > 0.0:
        raise NoConvergence("no sign change of f on branch IV")
    t = brentq(lambda t: _f_on_chart(params, ch, t), ch.t_lo, ch.t_hi,
               xtol=1e-15, rtol=1e-15, maxiter=400)
    m, e = ch.point(t)
    r_h = params.r_star * math.exp(rm._log_rho(m, e))
    shift = params.r_corr ** 6 / params.r_g ** 5
    if dps is None and shift < 1e-9 * params.r_g:
        dps = 40
    if dps:
        from .reference import ReferenceModel

        r_h = float(ReferenceModel(dps).horizon(params.r_g, params.L, seed_e=e))
    return r_h


def bubble_params(L=1.0):
    """Constant-m interior solution: (m0, alpha1(m0), r0, volume)."""
    m0 = rm.singular_data()[0]
    a1 = _point(m0).alpha1
    r0 = L / (2.0 * math.sqrt(abs(a1) + 1.0))
    return BubbleParams(m0, a1, r0, 2.0 * abs(m0) * math.pi ** 2 * r0 ** 3)


def bubble_metric(r, L=1.0):
    """Metric of the bubble solution on 0 <= r < r0.

    Raises:
        OutOfDomain: for r >= r0 or r < 0.
    """
    bp = bubble_params(L)
    if not 0.0 <= r < bp.r0:
        raise OutOfDomain(f"bubble metric defined for 0 <= r < r0 = {bp.r0!r}, got {r!r}")
    y = r / bp.r0
    f = 1.0 - y * y
    exponent = 2.0 * bp.m0 * bp.m0
    g00 = 0.0 if r == 0.0 else (1.0 / (y * y) - 1.0) * y ** exponent
    g11 = -bp.m0 * bp.m0 / f
    return _sample(r, bp.m0, g00, g11, f, SOURCE_BUBBLE)


def exp_nu_from_structure(params, m, h=1e-4):
    """e^nu = L^2 / (4 r (alpha2 - 1)) d sqrt(f)/dr by central differences.

    The difference is taken in the branch chart coordinate, so ``h`` is a
    step in that coordinate. Compare with sqrt(-g11).
    """
    ch = rm.chart(params.branch)
    t = ch.coordinate(m)

    def at(s):
        mm, ee = ch.point(s)
        r = params.r_star * math.exp(rm._log_rho(mm, ee))
        f = 1.0 + 4.0 * (r / params.L) ** 2 * _point(mm, ee).a1m1
        return r, math.sqrt(f)

    r_p, s_p = at(t + h)
    r_m, s_m = at(t - h)
    r2_p, s2_p = at(t + 2 * h)
    r2_m, s2_m = at(t - 2 * h)
    ds = (-s2_p + 8 * s_p - 8 * s_m + s2_m)
    dr = (-r2_p + 8 * r_p - 8 * r_m + r2_m)
    m0, e0 = ch.point(t)
    r = params.r_star * math.exp(rm._log_rho(m0, e0))
    return params.L ** 2 / (4.0 * r * _point(m0, e0).a2m1) * ds / dr


def _default_interior_rstar(branch):
    """Half the largest r_star/L that keeps f > 0 at the small-r edge.

    Branch II needs f(-2) > 0, branch III needs f(m_min) > 0; on branch I
    f > 0 holds for any r_star and L itself is used.
    """
    if branch is Branch.I:
        return 1.0
    if branch is Branch.II:
        m = -2.0 + 1e-9
        pt = _point(m)
        c = math.exp(2.0 * rm._log_rho(m, m - 1.0)) * pt.a1m1
    else:
        cc = rm.critical_constants()
        c = cc.A ** 2 * _point(cc.m_min).a1m1
    if c >= 0.0:
        return 1.0
    return 0.25 / math.sqrt(-c)


def _slope(samples, attr):
    xs = [math.log(s.r) for s in samples]
    ys = [math.log(abs(getattr(s, attr))) for s in samples]
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def interior_scan(branch, r_star=None, L=1.0, samples=60):
    """Tabulate the metric across an interior branch (I, II or III).

    For I and II the r -> 0 edge sits at m -> -2; there the log-log slopes
    of g00 and |g11| against r are fitted (expected 2 and 4). The
    signature-valid windows are the r-intervals with f > 0.
    """
    branch = Branch.parse(branch)
    if branch not in (Branch.I, Branch.II, Branch.III):
        raise DomainError(f"interior_scan takes branch I, II or III, got {branch.value}")
    if r_star is None:
        r_star = _default_interior_rstar(branch) * L
    params = ModelParams(L=L, r_star=r_star, branch=branch)
    ch = rm.chart(branch)
    lo, hi = ch.t_lo, ch.t_hi
    if branch is Branch.III:
        hi = ch.coordinate(rm._m_min() - 1e-6)
    table = []
    for i in range(samples):
        t = lo + (hi - lo) * i / (samples - 1)
        table.append(_evaluate(params, *ch.point(t)))
    table.sort(key=lambda s: s.r)

    slope00 = slope11 = None
    if branch in (Branch.I, Branch.II):
        near = []
        for j in range(9):
            dm = 10.0 ** (-8.0 + 0.25 * j)
            m = -2.0 - dm if branch is Branch.I else -2.0 + dm
            near.append(_evaluate(params, m, m - 1.0))
        slope00 = _slope(near, "g00")
        slope11 = _slope(near, "g11")

    _, roots = _f_roots(params, branch)
    edges = [ch.t_lo] + sorted(roots) + [ch.t_hi]
    windows = []
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        if _f_on_chart(params, ch, mid) > 0.0:
            ra = r_star * math.exp(rm._log_rho(*ch.point(a)))
            rb = r_star * math.exp(rm._log_rho(*ch.point(b)))
            windows.append((min(ra, rb), max(ra, rb)))
    windows.sort()
    return InteriorScan(branch, r_star, tuple(table), slope00, slope11, tuple(windows))
