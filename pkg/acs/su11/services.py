"""SU(1,1) image of the affine group and the su(1,1) algebra.

The unitary ``V_(q,p)`` that builds coherent states from the fiducial is
``exp(2ip(K0 - K1)/q) exp(-2i ln q K2)``. In the two-dimensional
representation it becomes the matrix returned by :func:`v_matrix`.
"""

import cmath
import math

import numpy as np
from loguru import logger

from acs.coherent.validators import validate_label
from acs.errors import ParameterError
from acs.su11.models import AlgebraRep, CartanFactors, Side, SU11Matrix
from acs.su11.validators import validate_rep, validate_side

Label = tuple[float, float]


def _require_label(q: float, p: float) -> None:
    is_valid, error = validate_label(q, p)
    if not is_valid:
        raise ParameterError(str(error))


def v_matrix(q: float, p: float) -> SU11Matrix:
    """Matrix of ``V_(q,p)``.

    ``alpha = (q + 1/q)/2 + ip/q^2`` and
    ``beta = -i[(q - 1/q)/2 - ip/q^2]``.

    Args:
        q (float): Position label, positive
        p (float): Momentum label

    Returns:
        SU11Matrix: The matrix
    """
    _require_label(q, p)
    alpha = complex(0.5 * (q + 1.0 / q), p / q**2)
    beta = -1j * complex(0.5 * (q - 1.0 / q), -p / q**2)
    return SU11Matrix(alpha, beta)


def rep_matrix(q: float, p: float) -> SU11Matrix:
    """Homomorphic image of the affine group element ``(q, p)``.

    ``rep_matrix(a) @ rep_matrix(b) == rep_matrix(group_law(a, b))`` and
    ``v_matrix(q, p) == rep_matrix(1/q, p/q^2)``.

    Args:
        q (float): Position label, positive
        p (float): Momentum label

    Returns:
        SU11Matrix: The matrix
    """
    _require_label(q, p)
    alpha = complex(0.5 * (q + 1.0 / q), p)
    beta = complex(-p, 0.5 * (q - 1.0 / q))
    return SU11Matrix(alpha, beta)


def factor_matrices(q: float, p: float) -> tuple[SU11Matrix, SU11Matrix]:
    """The one-parameter factors whose product is :func:`v_matrix`.

    Args:
        q (float): Position label, positive
        p (float): Momentum label

    Returns:
        tuple[SU11Matrix, SU11Matrix]: ``exp(2ip(K0 - K1)/q)`` and
        ``exp(-2i ln q K2)``
    """
    _require_label(q, p)
    ratio = p / q
    translation = SU11Matrix(complex(1.0, ratio), complex(-ratio, 0.0))
    dilation = SU11Matrix(
        complex(0.5 * (q + 1.0 / q)),
        complex(0.0, -0.5 * (q - 1.0 / q)),
    )
    return translation, dilation


def group_law(a: Label, b: Label) -> Label:
    """Affine group product ``(q, p)(q', p') = (q q', q' p + p'/q)``.

    Args:
        a (Label): Left element
        b (Label): Right element

    Returns:
        Label: The product
    """
    (q, p), (q_b, p_b) = a, b
    _require_label(q, p)
    _require_label(q_b, p_b)
    return q * q_b, q_b * p + p_b / q


def inverse(q: float, p: float) -> Label:
    """Group inverse ``(1/q, -p)``.

    Args:
        q (float): Position label, positive
        p (float): Momentum label

    Returns:
        Label: The inverse element
    """
    _require_label(q, p)
    return 1.0 / q, -p


def cartan(m: SU11Matrix, side: Side = 'left') -> CartanFactors:
    """Left ``p(zeta) h(theta)`` or right ``h(theta) p(zeta')`` factors.

    ``theta`` is twice the principal argument of alpha, so it lies in
    ``(-2 pi, 2 pi]``; reassembly does not depend on that branch.

    Args:
        m (SU11Matrix): The matrix
        side (Side): ``'left'`` or ``'right'``

    Returns:
        CartanFactors: The factors

    Raises:
        ParameterError: If the side is unknown
    """
    is_valid, error = validate_side(side)
    if not is_valid:
        raise ParameterError(str(error))
    theta = 2.0 * cmath.phase(m.alpha)
    if side == 'left':
        zeta = m.beta / m.alpha.conjugate()
    else:
        zeta = m.beta / m.alpha
    return CartanFactors(side, theta, zeta, abs(m.alpha))


def exp_su11(lambda0: float, z: complex) -> SU11Matrix:
    """Exponential of ``[[i lambda0/2, z/2], [conj(z)/2, -i lambda0/2]]``.

    The generator squares to ``Delta`` times the identity with
    ``Delta = (|z|^2 - lambda0^2)/4``, which selects hyperbolic,
    trigonometric or linear closed forms.

    Args:
        lambda0 (float): Compact coefficient
        z (complex): Non-compact coefficient

    Returns:
        SU11Matrix: The exponential
    """
    delta = (abs(z) ** 2 - lambda0**2) / 4.0
    if delta > 0:
        root = math.sqrt(delta)
        even, odd = math.cosh(root), math.sinh(root) / root
    elif delta < 0:
        root = math.sqrt(-delta)
        even, odd = math.cos(root), math.sin(root) / root
    else:
        even, odd = 1.0, 1.0
    return SU11Matrix(
        complex(even, 0.5 * odd * lambda0),
        0.5 * odd * complex(z),
    )


def bargmann_index(nu: float) -> float:
    """Bargmann index ``eta = (nu + 1)/2`` of the representation.

    Args:
        nu (float): Repulsion index

    Returns:
        float: eta
    """
    return 0.5 * (nu + 1.0)


def casimir_value(nu: float) -> float:
    """Casimir ``K1^2 + K2^2 - K0^2 = (3/4 - C)/4`` with ``C = nu^2 - 1/4``.

    Args:
        nu (float): Repulsion index

    Returns:
        float: ``eta (1 - eta)``
    """
    return 0.25 * (0.75 - (nu**2 - 0.25))


def algebra_rep(nu: float, size: int, omega: float = 0.0) -> AlgebraRep:
    """Truncated K0, K+, K- and the rotated K1, K2.

    ``K+ e_k = sqrt((k+1)(k+2 eta)) e_(k+1)``; the last row and column
    of products of ladder operators carry truncation artifacts.

    Args:
        nu (float): Repulsion index, greater than 1/2
        size (int): Truncation N
        omega (float): Rotation angle of the ``K1, K2`` pair

    Returns:
        AlgebraRep: The representation

    Raises:
        ParameterError: If nu or the size is out of range
    """
    is_valid, error = validate_rep(nu, size)
    if not is_valid:
        raise ParameterError(str(error))
    eta = bargmann_index(nu)
    k = np.arange(size - 1)
    k_plus = np.diag(np.sqrt((k + 1.0) * (k + 2.0 * eta)), -1)
    k_minus = k_plus.T.copy()
    k1 = 0.5 * (k_plus + k_minus) + 0j
    k2 = (k_plus - k_minus) / 2j
    cos, sin = math.cos(omega), math.sin(omega)
    return AlgebraRep(
        nu=nu,
        eta=eta,
        omega=omega,
        k0=np.diag(eta + np.arange(size, dtype=np.float64)),
        k_plus=k_plus,
        k_minus=k_minus,
        k1=cos * k1 + sin * k2,
        k2=-sin * k1 + cos * k2,
    )


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def algebra_residuals(rep: AlgebraRep) -> dict[str, float]:
    """Commutation rules and Casimir on the interior block.

    Args:
        rep (AlgebraRep): The representation

    Returns:
        dict[str, float]: Largest deviation of each rule
    """
    inner = rep.interior
    block = (inner, inner)
    identity = np.eye(rep.size)
    casimir = rep.k1 @ rep.k1 + rep.k2 @ rep.k2 - rep.k0 @ rep.k0
    rules = {
        'k0_k_plus': _commutator(rep.k0, rep.k_plus) - rep.k_plus,
        'k0_k_minus': _commutator(rep.k0, rep.k_minus) + rep.k_minus,
        'k_plus_k_minus': (
            _commutator(rep.k_plus, rep.k_minus) + 2.0 * rep.k0
        ),
        'k1_k2': _commutator(rep.k1, rep.k2) + 1j * rep.k0,
        'casimir': casimir - casimir_value(rep.nu) * identity,
        'adjoint': rep.k_minus - rep.k_plus.conj().T,
    }
    residuals = {
        name: float(np.max(np.abs(matrix[block])))
        for name, matrix in rules.items()
    }
    logger.debug(f'Algebra residuals for {rep.to_dict()}: {residuals}')
    return residuals
