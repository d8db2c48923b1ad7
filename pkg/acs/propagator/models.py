"""Basis, operator and state types of the spectral propagator."""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import linalg

from acs.errors import ConvergenceError, ParameterError
from acs.propagator.validators import validate_basis, validate_coefficients
from acs.specfun import ComplexArray, FloatArray


@dataclass(frozen=True)
class BasisSpec:
    """The functions ``Phi_k(x; nu, xi_ref)`` for ``k < size``.

    Attributes:
        nu (float): Repulsion index, greater than 1/2
        xi_ref (float): Basis scale
        size (int): Truncation N
    """

    nu: float
    xi_ref: float
    size: int

    def __post_init__(self) -> None:
        """Validate the basis parameters.

        Raises:
            ParameterError: If a parameter is out of range
        """
        is_valid, error = validate_basis(self.nu, self.xi_ref, self.size)
        if not is_valid:
            raise ParameterError(str(error))

    @property
    def levels(self) -> FloatArray:
        """Factors ``2k + nu + 1`` of the oscillator eigenvalues."""
        return 2.0 * np.arange(self.size) + self.nu + 1.0

    @property
    def extent(self) -> float:
        """Point beyond which every basis function is negligible."""
        top = 4 * self.size + 2 * self.nu + 80
        return float(np.sqrt(top / self.xi_ref))

    def doubled(self) -> 'BasisSpec':
        """Return the basis with twice the truncation."""
        return BasisSpec(self.nu, self.xi_ref, 2 * self.size)

    def to_dict(self) -> dict[str, object]:
        """Convert the basis to a dictionary.

        Returns:
            dict: nu, xi_ref and size
        """
        return {'nu': self.nu, 'xi_ref': self.xi_ref, 'size': self.size}


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Matrix of an operator in a truncated basis.

    Attributes:
        matrix (ComplexArray): Hermitian N x N entries
        basis (BasisSpec): The basis
        label (str): Name of the operator
    """

    matrix: ComplexArray
    basis: BasisSpec
    label: str = ''

    def __post_init__(self) -> None:
        """Freeze the entries and check the shape.

        Raises:
            ParameterError: If the matrix is not N x N
        """
        entries = np.array(self.matrix, dtype=np.complex128)
        size = self.basis.size
        if entries.shape != (size, size):
            msg = f'{self.label} matrix must be {size}x{size}'
            raise ParameterError(msg)
        entries.setflags(write=False)
        object.__setattr__(self, 'matrix', entries)

    @property
    def hermiticity_error(self) -> float:
        """Largest entry of ``M - M^H``."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    @cached_property
    def eigensystem(self) -> tuple[FloatArray, ComplexArray]:
        """Eigenvalues and eigenvectors of the Hermitian matrix.

        Raises:
            ConvergenceError: If the eigensolver fails
        """
        try:
            values, vectors = linalg.eigh(self.matrix)
        except linalg.LinAlgError as error:
            msg = f'Eigendecomposition of {self.label} failed'
            details = {'basis': self.basis.to_dict()}
            raise ConvergenceError(msg, details) from error
        return values, vectors

    def expectation(self, state: 'StateVector') -> float:
        """Real expectation ``<c|M|c> / <c|c>``.

        Args:
            state (StateVector): The state

        Returns:
            float: The expectation value
        """
        c = state.coefficients
        value = np.vdot(c, self.matrix @ c).real / np.vdot(c, c).real
        return float(value)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Expansion coefficients of a state in a truncated basis.

    Attributes:
        coefficients (ComplexArray): ``c_k = <Phi_k|psi>``
        basis (BasisSpec): The basis
        deficit (float): ``1 - ||c||^2``, the weight outside the span
    """

    coefficients: ComplexArray
    basis: BasisSpec
    deficit: float = field(default=0.0)

    def __post_init__(self) -> None:
        """Validate and freeze the coefficients.

        Raises:
            ParameterError: If the vector does not fit the basis
        """
        values = np.array(self.coefficients, dtype=np.complex128)
        is_valid, error = validate_coefficients(values, self.basis.size)
        if not is_valid:
            raise ParameterError(str(error))
        values.setflags(write=False)
        object.__setattr__(self, 'coefficients', values)

    @property
    def norm(self) -> float:
        """Euclidean norm of the coefficients."""
        return float(np.linalg.norm(self.coefficients))

    def inner(self, other: 'StateVector') -> complex:
        """Inner product ``<self|other>``.

        Args:
            other (StateVector): Ket in the same basis

        Returns:
            complex: The inner product

        Raises:
            ParameterError: If the bases differ
        """
        if other.basis != self.basis:
            msg = 'Inner product needs a common basis'
            raise ParameterError(msg)
        return complex(np.vdot(self.coefficients, other.coefficients))

    def to_dict(self) -> dict[str, object]:
        """Summarize the vector.

        Returns:
            dict: Basis, norm and truncation deficit
        """
        return {
            'basis': self.basis.to_dict(),
            'norm': self.norm,
            'deficit': self.deficit,
        }


@dataclass(frozen=True)
class FidelityRow:
    """Overlap of the propagated state with the evolved label at one time.

    Attributes:
        t (float): Time
        fidelity (complex): ``<Q_t,P_t| exp(-i H t) |q,p>``
        deficit (float): Largest truncation deficit of both end states
        delta (float): ``|F_N - F_2N|``
        energy_drift (float): Change of ``<H>`` along the propagation
        q (float): Evolved position label
        p (float): Evolved momentum label
    """

    t: float
    fidelity: complex
    deficit: float
    delta: float
    energy_drift: float
    q: float
    p: float

    @property
    def error(self) -> float:
        """``|F - 1|``."""
        return abs(self.fidelity - 1.0)

    def to_dict(self) -> dict[str, object]:
        """Convert the row to a dictionary.

        Returns:
            dict: Time, fidelity parts and diagnostics
        """
        return {
            't': self.t,
            're_f': self.fidelity.real,
            'im_f': self.fidelity.imag,
            'abs_f_minus_1': self.error,
            'deficit': self.deficit,
            'delta': self.delta,
            'energy_drift': self.energy_drift,
            'q': self.q,
            'p': self.p,
        }


@dataclass(frozen=True)
class FidelityReport:
    """Parametric-evolution check over a list of times.

    Attributes:
        rows (tuple[FidelityRow, ...]): One row per time
        basis (BasisSpec): Basis of size N; 2N served as reference
        deficit_threshold (float): Largest accepted deficit
        stability_threshold (float): Largest accepted N-vs-2N delta
    """

    rows: tuple[FidelityRow, ...]
    basis: BasisSpec
    deficit_threshold: float
    stability_threshold: float

    @property
    def max_error(self) -> float:
        """Largest ``|F - 1|``."""
        return max(row.error for row in self.rows)

    @property
    def converged(self) -> bool:
        """Whether truncation and N-vs-2N stability are within bounds."""
        return all(
            row.deficit <= self.deficit_threshold
            and row.delta <= self.stability_threshold
            for row in self.rows
        )

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a dictionary.

        Returns:
            dict: Rows, basis, thresholds and verdict
        """
        return {
            'basis': self.basis.to_dict(),
            'rows': [row.to_dict() for row in self.rows],
            'max_error': self.max_error,
            'deficit_threshold': self.deficit_threshold,
            'stability_threshold': self.stability_threshold,
            'converged': self.converged,
        }


@dataclass(frozen=True)
class LiouvilleReport:
    """Transport of a state's phase-space amplitude along the flow.

    Attributes:
        t (float): Time
        points (tuple[tuple[float, float], ...]): Sample labels (q, p)
        propagated (ComplexArray): ``<q,p| exp(-i H t) |psi>``
        transported (ComplexArray): ``<Q_-t, P_-t|psi>``
        deficit (float): Largest truncation deficit involved
    """

    t: float
    points: tuple[tuple[float, float], ...]
    propagated: ComplexArray
    transported: ComplexArray
    deficit: float

    @property
    def residuals(self) -> FloatArray:
        """Absolute difference per sample point."""
        return np.abs(self.propagated - self.transported)

    @property
    def max_residual(self) -> float:
        """Largest residual."""
        return float(np.max(self.residuals))

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a dictionary.

        Returns:
            dict: Sample points with their residuals
        """
        return {
            't': self.t,
            'points': [list(point) for point in self.points],
            'residuals': [float(value) for value in self.residuals],
            'max_residual': self.max_residual,
            'deficit': self.deficit,
        }


@dataclass(frozen=True)
class EhrenfestReport:
    """Finite-difference Ehrenfest check on propagated states.

    Attributes:
        times (FloatArray): Times of the check
        position_residual (FloatArray): ``|d<x>/dt - 2<p>|``
        momentum_residual (FloatArray): ``|d<p>/dt - 2(nu^2-1/4)<x^-3>|``
    """

    times: FloatArray
    position_residual: FloatArray
    momentum_residual: FloatArray

    @property
    def max_residual(self) -> float:
        """Largest residual of both equations."""
        return float(
            max(
                np.max(self.position_residual),
                np.max(self.momentum_residual),
            ),
        )

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a dictionary.

        Returns:
            dict: Residuals per time
        """
        return {
            'times': [float(t) for t in self.times],
            'position_residual': [float(v) for v in self.position_residual],
            'momentum_residual': [float(v) for v in self.momentum_residual],
            'max_residual': self.max_residual,
        }
