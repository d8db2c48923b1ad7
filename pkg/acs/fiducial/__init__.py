"""Fiducial vectors and their moments."""

from acs.fiducial.models import (
    ConstraintReport,
    DerivativeConstants,
    FiducialSpec,
    GridFiducial,
    Moment,
    MomentReport,
    RadialState,
)
from acs.fiducial.services import (
    c0_level,
    c_gamma,
    derivative_constants,
    eigen_residual,
    fiducial_derivative,
    g_moment,
    inner_product,
    make_spec,
    moment,
    moment_by_quadrature,
    moment_report,
    omega,
    omega_tilde,
    phi,
    phi_derivatives,
    radial_rule,
    repulsion_identity,
    rescale,
    validate,
    xi_star,
)
