"""Special functions and quadrature primitives."""

from acs.specfun.models import (
    ComplexArray,
    FloatArray,
    IntegrationResult,
    QuadratureRule,
    RuleKind,
)
from acs.specfun.services import (
    build_rule,
    graded_panels,
    integrate,
    laguerre,
    laguerre_function_table,
    legendre_panels,
    log_gamma,
    oscillator_derivative_table,
    oscillator_table,
    square_substitution,
)
