"""Validation utilities for the truncated Laguerre basis.

Constants:
    MIN_SIZE (int): Smallest accepted truncation.
    MAX_SIZE (int): Largest truncation of a dense eigendecomposition.

Functions:
    validate_basis: Validate (nu, xi_ref, size).
    validate_coefficients: Validate a coefficient vector against a basis.
"""

import numpy as np
import numpy.typing as npt

from acs.fiducial.validators import validate_fiducial_spec

MIN_SIZE = 8
MAX_SIZE = 2048


def _check_size(size: int) -> str | None:
    """Ensure the truncation lies in the supported range."""
    if not MIN_SIZE <= size <= MAX_SIZE:
        return f'Basis size must lie in [{MIN_SIZE}, {MAX_SIZE}], got {size}'
    return None


def validate_basis(
    nu: float,
    xi_ref: float,
    size: int,
) -> tuple[bool, str | None]:
    """Validate the parameters of a Laguerre basis.

    Args:
        nu (float): Repulsion index.
        xi_ref (float): Basis scale.
        size (int): Number of basis functions.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    is_valid, error = validate_fiducial_spec(nu, 0, xi_ref)
    if not is_valid:
        return is_valid, error
    error = _check_size(size)
    return error is None, error


def validate_coefficients(
    coefficients: npt.NDArray[np.complex128],
    size: int,
) -> tuple[bool, str | None]:
    """Validate a coefficient vector.

    Args:
        coefficients (NDArray): Expansion coefficients.
        size (int): Size of the basis.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if coefficients.shape != (size,):
        return False, (
            f'Coefficient vector of shape {coefficients.shape} does not '
            f'match a basis of size {size}'
        )
    if not np.all(np.isfinite(coefficients)):
        return False, 'Coefficients must be finite'
    return True, None
