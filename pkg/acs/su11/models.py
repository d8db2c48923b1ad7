"""SU(1,1) matrices, Cartan factors and truncated algebra representations."""

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from acs.errors import ParameterError
from acs.specfun import ComplexArray, FloatArray
from acs.su11.validators import validate_matrix

Side = Literal['left', 'right']


@dataclass(frozen=True)
class SU11Matrix:
    """The matrix ``[[alpha, beta], [conj(beta), conj(alpha)]]``.

    Attributes:
        alpha (complex): Diagonal entry
        beta (complex): Off-diagonal entry
    """

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        """Check ``|alpha|^2 - |beta|^2 = 1``.

        Raises:
            ParameterError: If the entries leave the group
        """
        is_valid, error = validate_matrix(self.alpha, self.beta)
        if not is_valid:
            raise ParameterError(str(error))

    @classmethod
    def from_array(cls, matrix: ComplexArray) -> 'SU11Matrix':
        """Read the first row of a 2x2 array.

        Args:
            matrix (ComplexArray): A 2x2 array of SU(1,1) form

        Returns:
            SU11Matrix: The matrix
        """
        return cls(complex(matrix[0, 0]), complex(matrix[0, 1]))

    @property
    def array(self) -> ComplexArray:
        """The full 2x2 array."""
        return np.array(
            [
                [self.alpha, self.beta],
                [self.beta.conjugate(), self.alpha.conjugate()],
            ],
            dtype=np.complex128,
        )

    @property
    def unit_defect(self) -> float:
        """``|alpha|^2 - |beta|^2 - 1``."""
        return abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0

    def __matmul__(self, other: 'SU11Matrix') -> 'SU11Matrix':
        """Matrix product.

        Args:
            other (SU11Matrix): Right factor

        Returns:
            SU11Matrix: ``self @ other``
        """
        return SU11Matrix(
            self.alpha * other.alpha + self.beta * other.beta.conjugate(),
            self.alpha * other.beta + self.beta * other.alpha.conjugate(),
        )

    def inverse(self) -> 'SU11Matrix':
        """Return ``[[conj(alpha), -beta], [-conj(beta), alpha]]``."""
        return SU11Matrix(self.alpha.conjugate(), -self.beta)

    def distance(self, other: 'SU11Matrix') -> float:
        """Largest entry of the difference.

        Args:
            other (SU11Matrix): Matrix to compare with

        Returns:
            float: ``max(|d alpha|, |d beta|)``
        """
        return max(abs(self.alpha - other.alpha), abs(self.beta - other.beta))

    def to_dict(self) -> dict[str, object]:
        """Convert the matrix to a dictionary.

        Returns:
            dict: Real and imaginary parts of alpha and beta
        """
        return {
            'alpha': [self.alpha.real, self.alpha.imag],
            'beta': [self.beta.real, self.beta.imag],
            'unit_defect': self.unit_defect,
        }


def rotation(theta: float) -> SU11Matrix:
    """The compact factor ``h(theta) = diag(e^(i theta/2), e^(-i theta/2))``.

    Args:
        theta (float): Rotation angle

    Returns:
        SU11Matrix: The rotation
    """
    return SU11Matrix(cmath.exp(0.5j * theta), 0j)


def boost(zeta: complex, delta: float | None = None) -> SU11Matrix:
    """The factor ``p(zeta) = delta [[1, zeta], [conj(zeta), 1]]``.

    Args:
        zeta (complex): Point of the unit disk
        delta (float | None): Known ``|alpha|``; computed from zeta when
            omitted, which loses accuracy as ``|zeta|`` approaches 1

    Returns:
        SU11Matrix: The factor with ``delta = (1 - |zeta|^2)^(-1/2)``
    """
    if delta is None:
        delta = 1.0 / math.sqrt(1.0 - abs(zeta) ** 2)
    return SU11Matrix(complex(delta), delta * zeta)


@dataclass(frozen=True)
class CartanFactors:
    """Left ``p(zeta) h(theta)`` or right ``h(theta) p(zeta)`` factors.

    Attributes:
        side (Side): Which factorization
        theta (float): Rotation angle, ``e^(i theta/2) = alpha/|alpha|``
        zeta (complex): Disk point of the non-compact factor
        delta (float): ``(1 - |zeta|^2)^(-1/2) = |alpha|``
    """

    side: Side
    theta: float
    zeta: complex
    delta: float

    @property
    def displacement(self) -> complex:
        """``xi_c`` with ``zeta = -tanh|xi_c| e^(-i arg xi_c)``."""
        if self.zeta == 0:
            return 0j
        return math.atanh(abs(self.zeta)) * cmath.exp(
            -1j * cmath.phase(-self.zeta),
        )

    def reassemble(self) -> SU11Matrix:
        """Multiply the factors back together.

        Returns:
            SU11Matrix: The factorized matrix
        """
        factor = boost(self.zeta, self.delta)
        if self.side == 'left':
            return factor @ rotation(self.theta)
        return rotation(self.theta) @ factor

    def to_dict(self) -> dict[str, object]:
        """Convert the factors to a dictionary.

        Returns:
            dict: Side, angle, disk point, delta and displacement
        """
        displacement = self.displacement
        return {
            'side': self.side,
            'theta': self.theta,
            'zeta': [self.zeta.real, self.zeta.imag],
            'delta': self.delta,
            'displacement': [displacement.real, displacement.imag],
        }


@dataclass(frozen=True, eq=False)
class AlgebraRep:
    """Truncated discrete-series representation of su(1,1).

    Attributes:
        nu (float): Repulsion index
        eta (float): Bargmann index ``(nu + 1)/2``
        omega (float): Rotation angle of the ``K1, K2`` pair
        k0 (FloatArray): ``diag(eta + k)``
        k_plus (FloatArray): Raising operator
        k_minus (FloatArray): Lowering operator
        k1 (ComplexArray): ``(K+ + K-)/2`` rotated by omega
        k2 (ComplexArray): ``(K+ - K-)/2i`` rotated by omega
    """

    nu: float
    eta: float
    omega: float
    k0: FloatArray
    k_plus: FloatArray
    k_minus: FloatArray
    k1: ComplexArray
    k2: ComplexArray

    @property
    def size(self) -> int:
        """Truncation N."""
        return int(self.k0.shape[0])

    @property
    def interior(self) -> slice:
        """Rows and columns free of truncation artifacts."""
        return slice(0, self.size - 2)

    def to_dict(self) -> dict[str, object]:
        """Summarize the representation.

        Returns:
            dict: nu, Bargmann index, angle and size
        """
        return {
            'nu': self.nu,
            'eta': self.eta,
            'omega': self.omega,
            'size': self.size,
        }
