"""Acceptance criteria 1-14, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also collected in the terminal summary of any pytest run.
"""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from bigravity import curvature as cv
from bigravity import metric as mt
from bigravity import radial_map as rm
from bigravity.core_maps import (
    alphas,
    compatibility_residual,
    cubic_residual,
    dalphas_dm,
    dk_dm,
    minimization_defect,
    solve_k,
)
from bigravity.reference import reference_model

from .oracles import F_VALUES, round_trip_samples, schwarzschild_frame


@pytest.fixture(scope="module")
def cc():
    return rm.critical_constants()


def test_c01_bubble_root(criterion, cc):
    a1 = alphas(cc.m0)[0]
    ok = abs(cc.m0 + 1.60808367) <= 1e-7 and abs(a1 + 10.8671667) <= 1e-6
    criterion(1, ok, f"m0 = {cc.m0:.10f}, alpha1(m0) = {a1:.9f}")


def test_c02_boundary_point(criterion, cc):
    ok = abs(cc.m_min + 1.365056) <= 1e-5 and abs(minimization_defect(cc.m_min)) < 1e-12
    criterion(2, ok, f"m_min = {cc.m_min:.10f}, defect = {minimization_defect(cc.m_min):.1e}")


def test_c03_radial_constants(criterion, cc):
    quad_err = max(abs(rm.F_of_m(m) - v) for m, v in F_VALUES.items() if m > -2)
    ok = abs(cc.A - 0.48024254) <= 1e-6 and abs(cc.B - 0.60170272) <= 1e-6 and quad_err <= 1e-8
    criterion(3, ok, f"A = {cc.A:.9f}, B = {cc.B:.9f}, max |F - oracle| = {quad_err:.1e}")


def test_c04_p1(criterion, cc):
    coef = cc.A * cc.p1 ** (1.0 / 3.0)
    ok = abs(cc.p1 - 0.3345645) <= 1e-7 and abs(coef - 0.333) <= 5e-4
    criterion(4, ok, f"p1 = {cc.p1:.9f}, A p1^(1/3) = {coef:.6f}")


def test_c05_q0_threshold(criterion, cc):
    q0 = -4.0 * cc.A ** 2 * cc.p1 ** (2.0 / 3.0) * (alphas(cc.m_min)[0] - 1.0)
    thr = q0 ** -1.5
    ok = abs(q0 - 3.0767137) <= 1e-5 and abs(thr - 0.185) <= 1e-3 and abs(q0 - cc.q0) < 1e-12
    criterion(5, ok, f"q0 = {q0:.8f}, threshold = {thr:.6f}")


def test_c06_boundary_prefactors(criterion):
    pre = mt.boundary_prefactors()
    ok = abs(pre.c00 - 15.144) <= 1e-3 and abs(pre.c11 - 0.495) <= 1e-3
    criterion(6, ok, f"c00 = {pre.c00:.6f}, c11 = {pre.c11:.6f}")


def test_c07_compatibility(criterion):
    grid = np.linspace(-10.0, 10.0, 1000)
    grid = grid[np.abs(grid + 2.0) >= 1e-3]
    worst = max(abs(compatibility_residual(float(m))) for m in grid)
    criterion(7, worst < 1e-10, f"max residual {worst:.1e} over {grid.size} points")


def test_c08_cubic(criterion):
    grid = np.linspace(-10.0, 10.0, 1000)
    worst = max(abs(cubic_residual(float(m), solve_k(float(m)))) for m in grid)
    k1, k0 = solve_k(1.0), solve_k(0.0)
    ok = worst < 1e-12 and abs(k1 - 1.0) <= 1e-14 and abs(k0) <= 1e-14
    criterion(8, ok, f"max scaled residual {worst:.1e}, k(1) - 1 = {k1 - 1:.1e}, k(0) = {k0:.1e}")


def _deviation(params, r):
    s = mt.metric_at_r(params, r)
    return abs(s.g00 / mt.schwarzschild_asymptotic(params, r).g00 - 1.0)


def test_c09_asymptotic_matching(criterion):
    params = mt.ModelParams(L=0.01, r_g=1.0)
    dev_double = _deviation(params, 100.0 * params.r_corr)

    ref = reference_model(60)
    r_corr = ref.ctx.root(ref.ctx.mpf(params.r_g) ** 2 * ref.ctx.mpf(params.L) ** 4 / 80, 6)
    devs = []
    for scale in (100, 1000, 10000):
        r = scale * r_corr
        _, g00, _, _ = ref.metric_at_r(params, r)
        devs.append(float(abs(g00 / ref.schwarzschild_asymptotic(params, r)[0] - 1)))
    monotone = devs[0] > devs[1] > devs[2]

    # deviation from plain Schwarzschild at fixed r scales as L^4
    r = 10.0
    d = [abs(mt.metric_at_r(mt.ModelParams(L=L, r_g=1.0), r).g00 - (1.0 - 1.0 / r))
         for L in (0.2, 0.1)]
    ratio = d[0] / d[1]
    ok = dev_double < 1e-8 and monotone and abs(ratio / 16.0 - 1.0) <= 0.2
    criterion(9, ok, f"dev(100 r_*) = {dev_double:.1e}; extended devs "
                     f"{devs[0]:.1e} > {devs[1]:.1e} > {devs[2]:.1e}; L^4 ratio = {ratio:.3f}")


def test_c10_horizon_shift(criterion):
    worst = 0.0
    for rg in (100.0, 1000.0):
        params = mt.ModelParams(L=1.0, r_g=rg)
        shift = params.r_corr ** 6 / rg ** 5
        r_h = mt.find_horizon(params)
        worst = max(worst, abs(r_h - (rg - shift)) / shift)
    criterion(10, worst < 0.1, f"max |r_h - (r_g - r_*^6/r_g^5)| / shift = {worst:.2e}")


def test_c11_curvature(criterion):
    rg = 1.0
    worst = 0.0
    for r in np.geomspace(2.0 * rg, 100.0 * rg, 25):
        k = cv.frame_curvature(*schwarzschild_frame(rg, float(r)))
        worst = max(worst, abs(cv.kretschmann(k) / (12.0 * rg ** 2 / r ** 6) - 1.0))

    params = mt.ModelParams(L=1.0, r_g=0.1)
    r_min = mt.boundary_radius(params)
    radii = [r_min * (1.0 + x) for x in (1e-2, 1e-3, 1e-4)]
    kr = [s.kretschmann for s in cv.invariants_along_ray(params, radii)]
    spread = max(kr) / min(kr)
    ok = worst < 1e-10 and spread < 10.0 and all(math.isfinite(v) for v in kr)
    criterion(11, ok, f"Schwarzschild max rel err {worst:.1e}; boundary max/min = {spread:.4f}")


def test_c12_bubble(criterion):
    bp = mt.bubble_params()
    closed = 2.0 * abs(bp.m0) * math.pi ** 2 * bp.r0 ** 3

    def integrand(theta):
        # r = r0 sin(theta) removes the (r0 - r)^(-1/2) endpoint singularity
        r = bp.r0 * math.sin(theta)
        if r >= bp.r0:
            r = math.nextafter(bp.r0, 0.0)
        dr = bp.r0 * math.cos(theta)
        return 4.0 * math.pi * r * r * math.sqrt(-mt.bubble_metric(r).g11) * dr

    proper, _ = quad(integrand, 0.0, math.pi / 2, epsabs=0.0, epsrel=1e-12)
    ok = (abs(bp.r0 - 0.14515) <= 1e-5 and abs(bp.volume / closed - 1.0) <= 1e-6
          and abs(bp.volume / (2.0 * proper) - 1.0) <= 1e-6)
    criterion(12, ok, f"r0 = {bp.r0:.8f}, volume = {bp.volume:.10f}, 2 x proper = {2 * proper:.10f}")


def test_c13_interior_slopes(criterion):
    scan = mt.interior_scan("ii")
    ok = abs(scan.slope_g00 - 2.0) <= 0.05 and abs(scan.slope_g11 - 4.0) <= 0.05
    criterion(13, ok, f"slopes g00 = {scan.slope_g00:.5f}, |g11| = {scan.slope_g11:.5f}")


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_c14_round_trip_and_derivatives(criterion):
    worst_rt = 0.0
    for branch in ("i", "ii", "iii", "iv", "v"):
        for m in round_trip_samples(branch):
            back = rm.invert_r(branch, rm.r_over_rstar(m))
            worst_rt = max(worst_rt, abs(back - m) / max(1.0, abs(m)))

    h = 1e-5
    worst_fd = 0.0
    for m in (-5.0, -1.9, -1.5, -1.0, 0.3, 2.0, 7.0):
        fd_a = [(alphas(m + h)[i] - alphas(m - h)[i]) / (2 * h) for i in (0, 1)]
        worst_fd = max(worst_fd, *(_rel(a, b) for a, b in zip(dalphas_dm(m), fd_a)))
        worst_fd = max(worst_fd, _rel(dk_dm(m), (solve_k(m + h) - solve_k(m - h)) / (2 * h)))
        fd_rho = (math.log(rm.r_over_rstar(m + h)) - math.log(rm.r_over_rstar(m - h))) / (2 * h)
        worst_fd = max(worst_fd, _rel(rm.dlog_rho_dm(m), fd_rho))

    ok = worst_rt <= 1e-10 and worst_fd <= 1e-6
    criterion(14, ok, f"round trip max |dm|/max(1,|m|) = {worst_rt:.1e} on 5 x 100 samples; "
                      f"derivative vs FD max rel = {worst_fd:.1e}")
