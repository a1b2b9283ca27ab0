# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; mirrors ``_kernels_py`` function by function."""
from libc.math cimport sqrt, cbrt, log, log1p, expm1, fabs

cdef double _SQRT15 = sqrt(15.0)
cdef double _LN3 = log(3.0)
cdef double _LN_DPRIME_AT_1 = log(5.0 / 9.0)
cdef double _TAYLOR_BAND = 1e-6
cdef double _OFFSET_BAND = 0.5

TAYLOR_BAND = _TAYLOR_BAND
OFFSET_BAND = _OFFSET_BAND


cdef inline double _solve_k(double m) nogil:
    cdef double s = sqrt(8.0 + (863.0 / 3.0) * m * m + (4.0 / 3.0) * m * m * m * m)
    cdef double c = 17.0 * m + m * m * m / 27.0
    cdef double k = m / 9.0 + (cbrt(c + s) + cbrt(c - s)) / 3.0
    cdef double fk, dfk, step
    cdef int i
    for i in range(3):
        fk = ((k - m / 3.0) * k + 2.0 / 3.0) * k - 4.0 * m / 3.0
        dfk = (3.0 * k - 2.0 * m / 3.0) * k + 2.0 / 3.0
        step = fk / dfk
        k -= step
        if fabs(step) <= 2.2e-16 * fabs(k):
            break
    return k


cdef inline double _shifted_k(double e, double k) nogil:
    cdef double x = k - 1.0
    cdef double p, phi, dphi, step
    cdef int i
    for i in range(4):
        p = 1.0 + x
        phi = ((x + 8.0 / 3.0) * x + 3.0) * x - (e / 3.0) * (p * p + 4.0)
        dphi = (3.0 * x + 16.0 / 3.0) * x + 3.0 - (2.0 * e / 3.0) * p
        step = phi / dphi
        x -= step
        if fabs(step) <= 2.2e-16 * fabs(x):
            break
    return x


cdef inline void _state(double m, double e, double* k, double* x, double* q,
                        double* a1m1, double* a2m1) nogil:
    cdef double ln_a2, a2
    k[0] = _solve_k(m)
    q[0] = _SQRT15 * sqrt((m * k[0] + 2.0) / (k[0] * k[0] + 4.0))
    if fabs(e) < _OFFSET_BAND:
        x[0] = _shifted_k(e, k[0])
        ln_a2 = (-log1p(e / 3.0)
                 + 0.5 * log1p((e + x[0] + e * x[0]) / 3.0)
                 - 0.5 * log1p((2.0 * x[0] + x[0] * x[0]) / 5.0))
        a2m1[0] = expm1(ln_a2)
        a1m1[0] = expm1(ln_a2 + log1p(x[0]))
    else:
        x[0] = k[0] - 1.0
        a2 = q[0] / (2.0 + m)
        a2m1[0] = a2 - 1.0
        a1m1[0] = k[0] * a2 - 1.0


cdef inline double _d_times_pole(double m, double e) nogil:
    cdef double k, x, q, a1m1, a2m1
    _state(m, e, &k, &x, &q, &a1m1, &a2m1)
    if fabs(e) < _OFFSET_BAND:
        return (2.0 + m) * (m * a2m1 - a1m1)
    return q * (m - k) - e * (2.0 + m)


cdef inline double _log_reg(double m, double e, double m0, double d1, double d2) nogil:
    cdef double delta = m - m0
    if fabs(delta) < _TAYLOR_BAND:
        return log(fabs(2.0 + m)) + log(fabs(d1 + 0.5 * d2 * delta)) - log(fabs(e))
    if e == 0.0:
        return _LN3 + _LN_DPRIME_AT_1 - log(fabs(1.0 - m0))
    return log(fabs(_d_times_pole(m, e))) - log(fabs(e)) - log(fabs(delta))


def solve_k(double m):
    return _solve_k(m)


def shifted_k(double e, double k):
    return _shifted_k(e, k)


def state(double m, double e):
    cdef double k, x, q, a1m1, a2m1
    _state(m, e, &k, &x, &q, &a1m1, &a2m1)
    return k, x, q, a1m1, a2m1


def derivs(double m, double k, double q):
    cdef double dk = (k * k / 3.0 + 4.0 / 3.0) / ((3.0 * k - 2.0 * m / 3.0) * k + 2.0 / 3.0)
    cdef double num = m * k + 2.0
    cdef double den = k * k + 4.0
    cdef double u = num / den
    cdef double du = ((k + m * dk) * den - num * 2.0 * k * dk) / (den * den)
    cdef double dq = _SQRT15 * du / (2.0 * sqrt(u))
    return dk, dq, k * q, dk * q + k * dq


def d_value(double m, double e):
    cdef double k, x, q, a1m1, a2m1
    _state(m, e, &k, &x, &q, &a1m1, &a2m1)
    if fabs(e) < _OFFSET_BAND:
        return m * a2m1 - a1m1
    return q * (m - k) / (2.0 + m) - e


def d_times_pole(double m, double e):
    return _d_times_pole(m, e)


def log_reg(double m, double e, double m0, double d1, double d2):
    return _log_reg(m, e, m0, d1, d2)


def piece_sum(double ea, double eb, const double[:] nodes, const double[:] weights,
              double m0, double d1, double d2):
    cdef double half = 0.5 * (eb - ea)
    cdef double mid = 0.5 * (ea + eb)
    cdef double total = 0.0
    cdef double e, m, s
    cdef Py_ssize_t i, n = nodes.shape[0]
    with nogil:
        for i in range(n):
            e = mid + half * nodes[i]
            m = 1.0 + e
            s = 2.0 + m * m
            total += weights[i] * (2.0 * m / (s * s)) * _log_reg(m, e, m0, d1, d2)
    return total * half
