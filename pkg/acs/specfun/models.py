"""Quadrature rule and integration result types."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]


class RuleKind(Enum):
    """Enumeration of supported quadrature families.

    Attributes:
        GAUSS_LAGUERRE: Generalized Gauss-Laguerre, weight x^nu e^-x.
        GAUSS_LEGENDRE: Gauss-Legendre on [-1, 1], mapped to [a, b].
        ADAPTIVE: QUADPACK adaptive Gauss-Kronrod panels.
    """

    GAUSS_LAGUERRE = 'gauss_laguerre'
    GAUSS_LEGENDRE = 'gauss_legendre'
    ADAPTIVE = 'adaptive'


def _frozen(values: FloatArray) -> FloatArray:
    values = np.array(values, dtype=np.float64)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """A quadrature rule tagged with its kind.

    Fixed rules carry nodes and weights; the adaptive rule carries only
    its tolerances and leaves both arrays empty.

    Attributes:
        kind (RuleKind): Quadrature family
        nodes (FloatArray): Strictly increasing nodes
        weights (FloatArray): Strictly positive weights
        order (int): Number of nodes of a fixed rule
        exponent (float): Laguerre weight exponent nu
        abs_tol (float): Absolute tolerance (adaptive)
        rel_tol (float): Relative tolerance (adaptive)
        max_depth (int): Bisection depth (adaptive)
    """

    kind: RuleKind
    nodes: FloatArray = field(default_factory=lambda: _frozen(np.empty(0)))
    weights: FloatArray = field(
        default_factory=lambda: _frozen(np.empty(0)),
    )
    order: int = 0
    exponent: float = 0.0
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self) -> None:
        """Make the node and weight arrays read-only."""
        object.__setattr__(self, 'nodes', _frozen(self.nodes))
        object.__setattr__(self, 'weights', _frozen(self.weights))

    def to_dict(self) -> dict[str, object]:
        """Convert the rule parameters to a manifest entry.

        Returns:
            dict: Kind and parameters, without the node arrays
        """
        return {
            'kind': self.kind.value,
            'order': self.order,
            'exponent': self.exponent,
            'abs_tol': self.abs_tol,
            'rel_tol': self.rel_tol,
            'max_depth': self.max_depth,
        }


@dataclass(frozen=True)
class IntegrationResult:
    """Value of an integral with its error estimate.

    Attributes:
        value (complex | float): Best available value
        error (float): Error estimate; a heuristic bound for fixed rules
        converged (bool): Whether the requested tolerance was met
        evaluations (int): Number of integrand evaluations
    """

    value: complex | float
    error: float
    converged: bool
    evaluations: int = 0
