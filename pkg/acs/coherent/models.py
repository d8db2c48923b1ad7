"""Coherent-state labels and report types."""

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from acs.coherent.validators import validate_cs_params, validate_superposition
from acs.errors import ParameterError
from acs.fiducial import FiducialSpec, make_spec
from acs.specfun import ComplexArray, FloatArray


@dataclass(frozen=True)
class CSParams:
    """Label ``(q, p; nu, n)`` of the coherent state ``|q,p;nu,n>``.

    The scale ``xi`` is derived from ``(nu, n)`` and never set by the
    caller.

    Attributes:
        q (float): Position label, positive
        p (float): Momentum label
        nu (float): Repulsion index, greater than 1/2
        n (int): Level of the fiducial Phi_n
        xi (float): ``xi_star(nu, n)``
    """

    q: float
    p: float
    nu: float
    n: int
    xi: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Validate the label and derive the scale.

        Raises:
            ParameterError: If a parameter is out of range
        """
        is_valid, error = validate_cs_params(self.q, self.p, self.nu, self.n)
        if not is_valid:
            raise ParameterError(str(error))
        object.__setattr__(self, 'xi', make_spec(self.nu, self.n).xi)

    @property
    def fiducial(self) -> FiducialSpec:
        """The fiducial Phi_n at the scaled point."""
        return FiducialSpec(self.nu, self.n, self.xi)

    @property
    def level_factor(self) -> float:
        """The factor ``2n + nu + 1``."""
        return 2 * self.n + self.nu + 1

    @property
    def phase_angle(self) -> float:
        """Angle ``(2n + nu + 1) arctan(qp / xi)``.

        The state carries the factor ``exp(-i * phase_angle)``.
        """
        return self.level_factor * math.atan(self.q * self.p / self.xi)

    def moved(self, q: float, p: float) -> 'CSParams':
        """Return the state of the same family at another label.

        Args:
            q (float): New position label
            p (float): New momentum label

        Returns:
            CSParams: The relabelled state
        """
        return CSParams(q, p, self.nu, self.n)

    def to_dict(self) -> dict[str, object]:
        """Convert the label to a dictionary.

        Returns:
            dict: q, p, nu, n and the derived xi
        """
        return {
            'q': self.q,
            'p': self.p,
            'nu': self.nu,
            'n': self.n,
            'xi': self.xi,
        }


@dataclass(frozen=True)
class Expectations:
    """Expectation values of the basic observables in a state.

    Attributes:
        x (float): ``<x>``
        p (float): ``<p>``
        d (float): ``<(xp + px)/2>``
        p2 (float): ``<p^2>``
        h (float): ``<p^2 + (nu^2 - 1/4)/x^2>``
    """

    x: float
    p: float
    d: float
    p2: float
    h: float

    def to_dict(self) -> dict[str, float]:
        """Convert the values to a dictionary.

        Returns:
            dict: Values keyed by observable
        """
        return {
            'x': self.x,
            'p': self.p,
            'd': self.d,
            'p2': self.p2,
            'h': self.h,
        }


@dataclass(frozen=True)
class CSSuperposition:
    """Normalized finite sum of coherent states of one family.

    Attributes:
        states (tuple[CSParams, ...]): Components
        amplitudes (ComplexArray): Coefficients, scaled to unit norm
    """

    states: tuple[CSParams, ...]
    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        """Validate the components and freeze the coefficients.

        Raises:
            ParameterError: If the components are inconsistent
        """
        coefficients = np.array(self.amplitudes, dtype=np.complex128)
        is_valid, error = validate_superposition(
            [state.nu for state in self.states],
            list(coefficients),
        )
        if not is_valid:
            raise ParameterError(str(error))
        coefficients.setflags(write=False)
        object.__setattr__(self, 'amplitudes', coefficients)

    @property
    def nu(self) -> float:
        """Common repulsion index."""
        return self.states[0].nu

    def to_dict(self) -> dict[str, object]:
        """Convert the superposition to a dictionary.

        Returns:
            dict: Components with real and imaginary amplitudes
        """
        return {
            'states': [state.to_dict() for state in self.states],
            'amplitudes': [
                [float(value.real), float(value.imag)]
                for value in self.amplitudes
            ],
        }


@dataclass(frozen=True)
class PhaseSpaceResult:
    """Matrix of a phase-space integral with its error budget.

    Attributes:
        matrix (ComplexArray): Integrated matrix, Hermitian by construction
        error (float): Quadrature error estimate of the largest entry
        tail (float): Integrated bound of the discarded momentum tails
        q_window (tuple[float, float]): Position range integrated over
        p_cutoff (float): Largest momentum cutoff used
        evaluations (int): Number of inner integrand evaluations
        converged (bool): Whether every adaptive stage met its tolerance
    """

    matrix: ComplexArray
    error: float
    tail: float
    q_window: tuple[float, float]
    p_cutoff: float
    evaluations: int
    converged: bool

    @property
    def budget(self) -> float:
        """Total error budget, quadrature plus truncated tails."""
        return self.error + self.tail

    def to_dict(self) -> dict[str, object]:
        """Convert the budget to a report entry.

        Returns:
            dict: Error, tail, window and cutoff
        """
        return {
            'error': self.error,
            'tail': self.tail,
            'budget': self.budget,
            'q_window': list(self.q_window),
            'p_cutoff': self.p_cutoff,
            'evaluations': self.evaluations,
            'converged': self.converged,
        }


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the resolution of the identity on test vectors.

    Attributes:
        gram (ComplexArray): Integrated Gram matrix
        residuals (FloatArray): ``|gram - delta|`` per pair
        threshold (float): Largest accepted residual
        integration (PhaseSpaceResult): Error budget of the integral
    """

    gram: ComplexArray
    residuals: FloatArray
    threshold: float
    integration: PhaseSpaceResult

    @property
    def max_residual(self) -> float:
        """Largest residual over all pairs."""
        return float(np.max(self.residuals))

    @property
    def passed(self) -> bool:
        """Whether every residual is below the threshold."""
        return self.max_residual < self.threshold

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a JSON-ready dictionary.

        Returns:
            dict: Residual matrix, verdict and error budget
        """
        return {
            'residuals': _rows(self.residuals),
            'gram_real': _rows(self.gram.real),
            'gram_imag': _rows(self.gram.imag),
            'max_residual': self.max_residual,
            'threshold': self.threshold,
            'passed': self.passed,
            'integration': self.integration.to_dict(),
        }


def _rows(matrix: npt.NDArray[np.float64]) -> list[list[float]]:
    return [[float(value) for value in row] for row in matrix]
