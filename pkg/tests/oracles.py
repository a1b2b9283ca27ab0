"""Frozen reference values and shared sample sets.

The numbers below were produced once by a standalone 40-digit mpmath
script that shares no code with the package: Newton on the cubic, the
direct structure-function formulas, tanh-sinh quadrature of M(m) with the
singular points as breakpoints, and mpmath.diff for derivatives.
"""
import math

from bigravity import radial_map as rm

K_AT_M0_APPROX = (-1.60808367, -1.296845166673101872695951546578)
ALPHAS_AT_0 = (0.0, 1.369306393762915283642424457002)
ALPHAS_AT_M0_APPROX = (-1.60808367, -10.867166602092399525, 8.379694724830405323)
DALPHAS_AT_MINUS_1 = (46.0 / 9.0, -31.0 / 9.0)
M_AT_MINUS_1 = -0.1540327067910989490977409235277949
M0 = -1.608083672374958571434514567291
ALPHA1_AT_M0 = -10.86716668040802463521735
R0 = 0.1451431296043072155542
PROPER_VOLUME = 0.048528608354679095392

# F(m); branch I values (m < -2) are anchored at m = -3
F_VALUES = {
    -5.0: 0.6965524106684241039003,
    -3.0: 0.8752564706266427622464565,
    -1.9: 0.5955654786475301639370389,
    -1.365: 0.6176779281989783810975,
    -0.5: 0.6885126276350020194400982,
    0.0: 0.6649251955306808228833561501,
    0.5: 0.6279280156289095447814491953625,
    1.0: 0.7202391231150897980459414266,
    3.0: 0.7074790119227464750408,
    10.0: 0.4297550542820058945960700704,
}
RHO_VALUES = {
    0.5: 1.428269481491774763751522856,
    -1.8: 0.27170887063696963209080874661,
    -1e6: 1.168168772076982064685999204229624686893,
    1e6: 0.8771774838853008988988876243702715073802,
}


def schwarzschild_frame(rg, r):
    """(lambda, nu, lambda', nu', lambda'', r) for g00 = 1 - rg/r."""
    f = 1.0 - rg / r
    lam = 0.5 * math.log(f)
    lam_r = rg / (2.0 * r * (r - rg))
    lam_rr = -rg * (2.0 * r - rg) / (2.0 * (r * r - r * rg) ** 2)
    return lam, -lam, lam_r, -lam_r, lam_rr, r


def schwarzschild_closed_form(rg, r):
    """Frame components, Kretschmann and cubic invariant, derived by hand."""
    k = (-rg / r ** 3, rg / (2 * r ** 3), -rg / (2 * r ** 3), rg / r ** 3)
    return k, 12.0 * rg ** 2 / r ** 6, -12.0 * rg ** 3 / r ** 9


def _limits(branch):
    cc = rm.critical_constants()
    # the far tails of I and V and the turning point m_min are excluded:
    # there d ln r / dm -> 0 and one ulp in r moves m by more than 1e-10
    return {
        "i": (-1e4, -2.0 - 1e-9),
        "ii": (-2.0 + 1e-9, cc.m0 - 1e-9),
        "iii": (cc.m0 + 1e-9, cc.m_min - 1e-4),
        "iv": (cc.m_min + 1e-4, 1.0 - 1e-12),
        "v": (1.0 + 1e-12, 1e4),
    }[branch]


def round_trip_samples(branch, n=100):
    """n values of m spread uniformly in the branch's chart coordinate."""
    ch = rm.chart(branch)
    a, b = (ch.coordinate(x) for x in _limits(branch))
    return [ch.point(a + (b - a) * (i + 0.5) / n)[0] for i in range(n)]
