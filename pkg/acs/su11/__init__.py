"""SU(1,1) matrices, Cartan factorizations and the su(1,1) algebra."""

from acs.su11.models import (
    AlgebraRep,
    CartanFactors,
    Side,
    SU11Matrix,
    boost,
    rotation,
)
from acs.su11.services import (
    Label,
    algebra_rep,
    algebra_residuals,
    bargmann_index,
    cartan,
    casimir_value,
    exp_su11,
    factor_matrices,
    group_law,
    inverse,
    rep_matrix,
    v_matrix,
)
