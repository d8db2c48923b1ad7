"""Validation utilities for SU(1,1) matrices and representations.

Constants:
    UNIT_TOLERANCE (float): Relative slack on ``|alpha|^2 - |beta|^2 = 1``.
    MIN_REP_SIZE (int): Smallest truncated representation.
    SIDES (tuple[str, ...]): Accepted Cartan factorization sides.

Functions:
    validate_matrix: Validate the entries of an SU(1,1) matrix.
    validate_side: Validate a Cartan factorization side.
    validate_rep: Validate the parameters of a truncated representation.
"""

import cmath

from acs.fiducial.validators import validate_levels

UNIT_TOLERANCE = 1e-10
MIN_REP_SIZE = 8
SIDES = ('left', 'right')


def _check_finite(alpha: complex, beta: complex) -> str | None:
    if not (cmath.isfinite(alpha) and cmath.isfinite(beta)):
        return 'Matrix entries must be finite'
    return None


def _check_unit(alpha: complex, beta: complex) -> str | None:
    """Ensure ``|alpha|^2 - |beta|^2 = 1``."""
    norm = abs(alpha) ** 2
    defect = norm - abs(beta) ** 2 - 1.0
    if abs(defect) > UNIT_TOLERANCE * max(1.0, norm):
        return f'|alpha|^2 - |beta|^2 must equal 1, off by {defect:.3e}'
    return None


def validate_matrix(
    alpha: complex,
    beta: complex,
) -> tuple[bool, str | None]:
    """Validate the entries of ``[[alpha, beta], [conj beta, conj alpha]]``.

    Args:
        alpha (complex): Diagonal entry.
        beta (complex): Off-diagonal entry.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_finite(alpha, beta) or _check_unit(alpha, beta)
    return error is None, error


def validate_side(side: str) -> tuple[bool, str | None]:
    """Validate a Cartan factorization side.

    Args:
        side (str): ``'left'`` or ``'right'``.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if side not in SIDES:
        return False, f"Side must be 'left' or 'right', got {side!r}"
    return True, None


def validate_rep(nu: float, size: int) -> tuple[bool, str | None]:
    """Validate the parameters of a truncated representation.

    Args:
        nu (float): Repulsion index.
        size (int): Number of basis vectors.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    is_valid, error = validate_levels(nu, 0)
    if not is_valid:
        return is_valid, error
    if size < MIN_REP_SIZE:
        return False, (
            f'Representation size must be at least {MIN_REP_SIZE}, '
            f'got {size}'
        )
    return True, None
