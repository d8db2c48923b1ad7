"""Coherent states, overlaps, densities and phase-space integrals."""

from acs.coherent.models import (
    CSParams,
    CSSuperposition,
    Expectations,
    IdentityReport,
    PhaseSpaceResult,
)
from acs.coherent.phase_space import PhaseSpaceIntegrator
from acs.coherent.services import (
    OverlapMethod,
    State,
    default_test_vectors,
    expectation_d,
    expectation_h,
    expectation_p,
    expectation_p2,
    expectation_x_power,
    expectations,
    gaussian_overlap,
    husimi_density,
    identity_check,
    overlap,
    overlap_grid,
    overlap_modulus_squared_n0,
    phase_factor,
    quadrature_expectations,
    state_rule,
    state_support,
    state_wavefunction,
    superpose,
    wavefunction,
    wavefunction_derivative,
    wavefunction_n0,
)
