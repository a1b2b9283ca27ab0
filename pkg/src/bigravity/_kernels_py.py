"""Pure-Python scalar kernels (fallback for the compiled ``_kernels``).

Every function here has a twin with the same signature in ``_kernels.pyx``.
Points on the branch line are passed as the pair ``(m, e)`` with
``e = m - 1`` supplied independently, so that quantities vanishing at the
flat point m = 1 keep full relative precision.
"""
import math

SQRT15 = math.sqrt(15.0)
LN3 = math.log(3.0)
# D'(1) = d/dm [m(a2 - 1) - (a1 - 1)] at m = 1
LN_DPRIME_AT_1 = math.log(5.0 / 9.0)
TAYLOR_BAND = 1e-6
OFFSET_BAND = 0.5


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def solve_k(m):
    """Real root of k^3 - (m/3)k^2 + (2/3)k - 4m/3 = 0."""
    s = math.sqrt(8.0 + (863.0 / 3.0) * m * m + (4.0 / 3.0) * m ** 4)
    c = 17.0 * m + m ** 3 / 27.0
    k = m / 9.0 + (_cbrt(c + s) + _cbrt(c - s)) / 3.0
    for _ in range(3):
        fk = ((k - m / 3.0) * k + 2.0 / 3.0) * k - 4.0 * m / 3.0
        dfk = (3.0 * k - 2.0 * m / 3.0) * k + 2.0 / 3.0
        step = fk / dfk
        k -= step
        if abs(step) <= 2.2e-16 * abs(k):
            break
    return k


def shifted_k(e, k):
    """k - 1 from the cubic rewritten around m = 1, k = 1."""
    x = k - 1.0
    for _ in range(4):
        p = 1.0 + x
        phi = ((x + 8.0 / 3.0) * x + 3.0) * x - (e / 3.0) * (p * p + 4.0)
        dphi = (3.0 * x + 16.0 / 3.0) * x + 3.0 - (2.0 * e / 3.0) * p
        step = phi / dphi
        x -= step
        if abs(step) <= 2.2e-16 * abs(x):
            break
    return x


def state(m, e):
    """(k, k - 1, Q, a1 - 1, a2 - 1) with Q = (2 + m) * a2."""
    k = solve_k(m)
    q = SQRT15 * math.sqrt((m * k + 2.0) / (k * k + 4.0))
    if abs(e) < OFFSET_BAND:
        x = shifted_k(e, k)
        ln_a2 = (
            -math.log1p(e / 3.0)
            + 0.5 * math.log1p((e + x + e * x) / 3.0)
            - 0.5 * math.log1p((2.0 * x + x * x) / 5.0)
        )
        a2m1 = math.expm1(ln_a2)
        a1m1 = math.expm1(ln_a2 + math.log1p(x))
    else:
        x = k - 1.0
        a2 = q / (2.0 + m)
        a2m1 = a2 - 1.0
        a1m1 = k * a2 - 1.0
    return k, x, q, a1m1, a2m1


def derivs(m, k, q):
    """(dk/dm, dQ/dm, P, dP/dm) with P = (2 + m) * a1 = k * Q."""
    dk = (k * k / 3.0 + 4.0 / 3.0) / ((3.0 * k - 2.0 * m / 3.0) * k + 2.0 / 3.0)
    num = m * k + 2.0
    den = k * k + 4.0
    u = num / den
    du = ((k + m * dk) * den - num * 2.0 * k * dk) / (den * den)
    dq = SQRT15 * du / (2.0 * math.sqrt(u))
    p = k * q
    dp = dk * q + k * dq
    return dk, dq, p, dp


def d_value(m, e):
    """D = m(a2 - 1) - (a1 - 1); vanishes at m = 1 and at the bubble root."""
    k, x, q, a1m1, a2m1 = state(m, e)
    if abs(e) < OFFSET_BAND:
        return m * a2m1 - a1m1
    return q * (m - k) / (2.0 + m) - e


def d_times_pole(m, e):
    """(2 + m) * D, finite across m = -2."""
    k, x, q, a1m1, a2m1 = state(m, e)
    if abs(e) < OFFSET_BAND:
        return (2.0 + m) * (m * a2m1 - a1m1)
    return q * (m - k) - e * (2.0 + m)


def log_reg(m, e, m0, d1, d2):
    """ln|D| with the log singularities at 1, m0 and -2 removed.

    Returns ln|(2+m) D| - ln|m-1| - ln|m-m0|; ``d1``, ``d2`` are D' and D''
    at ``m0``, used inside a narrow band where the direct form cancels.
    """
    delta = m - m0
    if abs(delta) < TAYLOR_BAND:
        return (math.log(abs(2.0 + m)) + math.log(abs(d1 + 0.5 * d2 * delta))
                - math.log(abs(e)))
    if e == 0.0:
        return LN3 + LN_DPRIME_AT_1 - math.log(abs(1.0 - m0))
    return (math.log(abs(d_times_pole(m, e))) - math.log(abs(e))
            - math.log(abs(delta)))


def piece_sum(ea, eb, nodes, weights, m0, d1, d2):
    """Gauss-Legendre integral of w(m) * log_reg(m) over m in [1+ea, 1+eb].

    w(m) = 2m / (2 + m^2)^2.
    """
    half = 0.5 * (eb - ea)
    mid = 0.5 * (ea + eb)
    total = 0.0
    for i in range(len(nodes)):
        e = mid + half * nodes[i]
        m = 1.0 + e
        s = 2.0 + m * m
        total += weights[i] * (2.0 * m / (s * s)) * log_reg(m, e, m0, d1, d2)
    return total * half
