"""Arbitrary-precision evaluation of the solution family with mpmath.

This module shares no numerics with the double-precision path: k comes
from Newton on the cubic, the structure functions from their direct
formulas, and F(m) from tanh-sinh quadrature of M(m) itself, with the
singular points as breakpoints. It serves two purposes: an independent
oracle for the tests, and the route for quantities that double precision
cannot resolve (the horizon shift for r_g >> L, the L^6 remainder of the
large-r expansion).
"""
from functools import lru_cache

import mpmath

from . import radial_map as rm
from .core_maps import solve_k as _solve_k_float
from .errors import NoConvergence
from .radial_map import Branch


class ReferenceModel:
    """Extended-precision route at ``dps`` decimal digits."""

    def __init__(self, dps=40):
        self.dps = int(dps)
        self.ctx = mpmath.MPContext()
        self.ctx.dps = self.dps
        self._m0 = None

    # --------------------------------------------------------- algebra

    def k(self, m):
        ctx = self.ctx
        m = ctx.mpf(m)
        k = ctx.mpf(_solve_k_float(float(m)))
        tol = ctx.mpf(10) ** (-ctx.dps - 2)
        for _ in range(200):
            fk = ((k - m / 3) * k + ctx.mpf(2) / 3) * k - 4 * m / 3
            dfk = (3 * k - 2 * m / 3) * k + ctx.mpf(2) / 3
            step = fk / dfk
            k -= step
            if abs(step) <= tol * max(1, abs(k)):
                break
        return k

    def state(self, m):
        """(k, alpha1, alpha2, dalpha1/dm, dalpha2/dm)."""
        ctx = self.ctx
        m = ctx.mpf(m)
        k = self.k(m)
        dk = (k * k / 3 + ctx.mpf(4) / 3) / ((3 * k - 2 * m / 3) * k + ctx.mpf(2) / 3)
        num, den = m * k + 2, k * k + 4
        u = num / den
        du = ((k + m * dk) * den - num * 2 * k * dk) / den ** 2
        s15 = ctx.sqrt(15)
        a2 = s15 * ctx.sqrt(u) / (2 + m)
        da2 = (s15 * du / (2 * ctx.sqrt(u)) - a2) / (2 + m)
        return k, k * a2, a2, dk * a2 + k * da2, da2

    def d(self, m):
        _, a1, a2, _, _ = self.state(m)
        return m * (a2 - 1) - (a1 - 1)

    def integrand(self, m):
        ctx = self.ctx
        with ctx.workdps(2 * self.dps):
            m = ctx.mpf(m)
            d = self.d(m)
            if d == 0:
                return ctx.mpf(0)
            val = 2 * m / (2 + m * m) ** 2 * ctx.log(abs(d))
        return +val

    def m0(self):
        if self._m0 is None:
            ctx = self.ctx
            with ctx.workdps(self.dps + 10):
                root = ctx.findroot(self.d, ctx.mpf(rm.singular_data()[0]))
            self._m0 = +root
        return self._m0

    # ----------------------------------------------------------- F, rho

    def _breakpoints(self, a, b):
        ctx = self.ctx
        lo, hi = min(a, b), max(a, b)
        marks = [ctx.mpf(x) for x in (-1.9, -1.5, -1, 0, 2)]
        x = ctx.mpf(4)
        while x < 2e6:
            marks += [x, -x]
            x *= 2
        m0 = self.m0()
        marks.append(m0)
        marks.append(ctx.mpf(-2))
        pts = sorted({p for p in marks if lo < p < hi} | {lo, hi})
        return pts if a <= b else pts[::-1]

    def integral_M(self, a, b):
        ctx = self.ctx
        pts = self._breakpoints(ctx.mpf(a), ctx.mpf(b))
        return ctx.quad(self.integrand, pts)

    def log_f(self, m):
        ctx = self.ctx
        m = ctx.mpf(m)
        s2 = ctx.sqrt(2)
        if m > -2:
            base = -ctx.log(3) / 6 - ctx.atan(1 / s2) / (3 * s2)
            base += -ctx.log((2 + m * m) / 3) / 6 - (ctx.atan(m / s2) - ctx.atan(1 / s2)) / (3 * s2)
            return base - self.integral_M(1, m)
        base = -ctx.log(2 + m * m) / 6 - ctx.atan(m / s2) / (3 * s2)
        return base - self.integral_M(-3, m)

    def log_rho(self, m):
        ctx = self.ctx
        m = ctx.mpf(m)
        return ctx.log(abs(2 + m)) / 3 - ctx.log(abs(self.d(m))) / (2 + m * m) + self.log_f(m)

    def dlog_rho_dm(self, m):
        m = self.ctx.mpf(m)
        _, a1, a2, da1, da2 = self.state(m)
        d = m * (a2 - 1) - (a1 - 1)
        dd = (a2 - 1) + m * da2 - da1
        s = 2 + m * m
        return 1 / (3 * (2 + m)) - dd / (d * s) - (m + 1) / (3 * s)

    def invert(self, branch, rho, seed_m):
        """m with r/r_star(m) = rho, by Newton from a double-precision seed.

        On branches IV and V the iteration runs in ln|m - 1|.
        """
        ctx = self.ctx
        branch = Branch.parse(branch)
        target = ctx.log(ctx.mpf(rho))
        m = ctx.mpf(seed_m)
        # the tanh-sinh quadrature in log_f is good to about dps - 8 digits
        tol = ctx.mpf(10) ** (-self.dps + 12)
        log_coord = branch in (Branch.IV, Branch.V)
        sign = 1 if branch is Branch.V else -1
        for _ in range(40):
            g = self.log_rho(m) - target
            if abs(g) <= tol:
                return m
            slope = self.dlog_rho_dm(m)
            if log_coord:
                u = ctx.log(abs(m - 1)) - g / ((m - 1) * slope)
                m = 1 + sign * ctx.exp(u)
            else:
                m = m - g / slope
        raise NoConvergence(f"extended-precision inversion stalled at m = {m}")

    # ------------------------------------------------------------ metric

    def metric(self, m, r_star, L=1):
        """(r, g00, g11, f) at m; g00 normalized to 1 at infinity."""
        ctx = self.ctx
        m = ctx.mpf(m)
        _, a1, a2, da1, da2 = self.state(m)
        d = m * (a2 - 1) - (a1 - 1)
        lf = self.log_f(m)
        r = ctx.mpf(r_star) * ctx.exp(ctx.log(abs(2 + m)) / 3 - ctx.log(abs(d)) / (2 + m * m) + lf)
        f = 1 + 4 * (r / L) ** 2 * (a1 - 1)
        s2 = ctx.sqrt(2)
        lf1 = -ctx.log(3) / 6 - ctx.atan(1 / s2) / (3 * s2)
        g00 = f * ctx.exp((6 / (2 + m * m) - 2) * ctx.log(abs(d)) - 6 * (lf - lf1))
        p = (2 + m) * a1
        dp = a1 + (2 + m) * da1
        n1 = m * dp - p + 2
        n2 = dp - a1 - 2 * (a2 - 1)
        g11 = -(n1 / n2) ** 2 / f
        return r, g00, g11, f

    def p1(self):
        ctx = self.ctx
        s2 = ctx.sqrt(2)
        return ctx.sqrt(3) / 8 * ctx.exp(ctx.atan(1 / s2) / s2)

    def r_star(self, params):
        """r_star at full precision (from r_g when given)."""
        ctx = self.ctx
        if params.r_g is None:
            return ctx.mpf(params.r_star)
        return ctx.cbrt(self.p1() * ctx.mpf(params.r_g) * ctx.mpf(params.L) ** 2)

    def metric_at_r(self, params, r):
        """(m, g00, g11, f) at radius r, seeded by the double-precision inversion."""
        ctx = self.ctx
        r_star = self.r_star(params)
        m, e, _ = rm._invert(params.branch, float(ctx.mpf(r) / r_star))
        seed = 1 + ctx.mpf(e) if abs(e) < 0.5 else ctx.mpf(m)
        m = self.invert(params.branch, ctx.mpf(r) / r_star, seed)
        _, g00, g11, f = self.metric(m, r_star, params.L)
        return m, g00, g11, f

    def schwarzschild_asymptotic(self, params, r):
        ctx = self.ctx
        r = ctx.mpf(r)
        rc6 = ctx.mpf(params.r_g) ** 2 * ctx.mpf(params.L) ** 4 / 80
        x = rc6 / r ** 6
        s = 1 - (ctx.mpf(params.r_g) / r) * (1 - x)
        return (1 + 3 * x) * s, -(1 - 9 * x) / s

    def horizon(self, r_g, L=1, seed_e=None):
        """Radius where f = 0 on branch IV, solved in u = ln(1 - m)."""
        ctx = self.ctx
        r_g, L = ctx.mpf(r_g), ctx.mpf(L)
        r_star = ctx.cbrt(self.p1() * r_g * L * L)

        def f_of_u(u):
            m = 1 - ctx.exp(u)
            return self.metric(m, r_star, L)[3]

        u0 = ctx.log(-ctx.mpf(seed_e))
        u = ctx.findroot(f_of_u, (u0, u0 + ctx.mpf("1e-6")), solver="secant")
        return self.metric(1 - ctx.exp(u), r_star, L)[0]


@lru_cache(maxsize=8)
def reference_model(dps=40):
    return ReferenceModel(dps)
