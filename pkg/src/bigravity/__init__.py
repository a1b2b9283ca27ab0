"""Static spherically symmetric solutions of Born-Infeld gravity.

The solution family is parametrized by a branch parameter m. ``core_maps``
holds the closed-form algebra in m, ``radial_map`` the map r(m) and its
inversion on each monotone branch, ``metric`` the metric components,
horizon and boundary radii, ``curvature`` the curvature invariants and
``analysis`` the derived weak-field quantities. Lengths are in units of L.
"""
from ._backend import BACKEND
from .analysis import density_report, effective_potential, equilibrium_radius
from .core_maps import (
    AlgebraicState,
    algebraic_state,
    alphas,
    compatibility_residual,
    cubic_residual,
    dalphas_dm,
    minimization_defect,
    ratio_defect,
    solve_k,
    structure_f,
)
from .curvature import (
    cubic_invariant,
    frame_curvature,
    invariants_along_ray,
    kretschmann,
)
from .errors import *  # noqa: F401,F403
from .metric import (
    MetricSample,
    ModelParams,
    boundary_asymptotic,
    boundary_prefactors,
    boundary_radius,
    bubble_metric,
    bubble_params,
    exact_metric,
    find_horizon,
    interior_scan,
    metric_at_r,
    schwarzschild_asymptotic,
)
from .radial_map import (
    Branch,
    CriticalConstants,
    F_of_m,
    branch_image,
    critical_constants,
    integrand_M,
    invert_r,
    r_over_rstar,
)

__version__ = "0.1.0"
