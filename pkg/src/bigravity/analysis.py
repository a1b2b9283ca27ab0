"""Physical read-outs: the weak-field potential, its minimum and the boundary density."""
import math
from dataclasses import dataclass

from . import radial_map as rm
from .errors import DomainError, DomainTooSmall
from .metric import ASYMPTOTIC_FLOOR, boundary_radius


@dataclass(frozen=True)
class DensityReport:
    r_g: float
    L: float
    r_min: float
    rho_scale: float
    rho_scale_closed_form: float
    note: str = "rho ~ r_g / r_min^3 up to a geometry-dependent factor left symbolic"


def _require_mass(params):
    if params.r_g is None or not params.r_g > 0.0:
        raise DomainError("a positive r_g is required")


def effective_potential(params, r):
    """V(r) = 3 r_*^6 / r^6 - r_g / r, read off the large-r g00.

    Raises:
        DomainTooSmall: for r <= 10 r_*, where the expansion is not justified.
    """
    _require_mass(params)
    rc = params.r_corr
    if not r > ASYMPTOTIC_FLOOR * rc:
        raise DomainTooSmall(f"r = {r!r} not above {ASYMPTOTIC_FLOOR:g} r_* = {ASYMPTOTIC_FLOOR * rc!r}")
    return 3.0 * rc ** 6 / r ** 6 - params.r_g / r


def potential_slope(params, r):
    """dV/dr; negative (repulsive) inside r_eq, positive outside."""
    rc6 = params.r_corr ** 6
    return -18.0 * rc6 / r ** 7 + params.r_g / r ** 2


def equilibrium_radius(params):
    """Minimum of V: r_eq = (18 r_*^6 / r_g)^(1/5)."""
    _require_mass(params)
    return (18.0 * params.r_corr ** 6 / params.r_g) ** 0.2


def density_report(params):
    """Mean-density proxy r_g / r_min^3, which is independent of r_g."""
    _require_mass(params)
    cc = rm.critical_constants()
    r_min = boundary_radius(params)
    return DensityReport(
        r_g=params.r_g,
        L=params.L,
        r_min=r_min,
        rho_scale=params.r_g / r_min ** 3,
        rho_scale_closed_form=1.0 / (cc.A ** 3 * cc.p1 * params.L ** 2),
    )
