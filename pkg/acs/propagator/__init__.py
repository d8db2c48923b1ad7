"""Spectral propagation of states under H_nu in a Laguerre basis."""

from acs.propagator.models import (
    BasisSpec,
    EhrenfestReport,
    FidelityReport,
    FidelityRow,
    LiouvilleReport,
    OperatorMatrix,
    StateVector,
)
from acs.propagator.services import (
    OperatorKind,
    Wavefunction,
    basis_grid,
    basis_operator,
    basis_table,
    ehrenfest_check,
    fidelity_report,
    hnu_matrix,
    liouville_check,
    project,
    propagate,
    reference_scale,
    state_amplitudes,
    x2_matrix,
)
