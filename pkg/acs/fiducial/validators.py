"""Validation utilities for fiducial parameters.

Constants:
    MIN_NU (float): Exclusive lower bound of the repulsion index.
    MAX_SPLINE_ORDER (int): Highest supported spline degree.

Functions:
    validate_fiducial_spec: Validate (nu, n, xi).
    validate_levels: Validate (nu, n) before xi is derived.
    validate_grid: Validate the samples of a grid fiducial.
"""

import math

import numpy as np

from acs.specfun import FloatArray

MIN_NU = 0.5
MAX_SPLINE_ORDER = 5


def _check_nu(nu: float) -> str | None:
    """Ensure the repulsion index exceeds 1/2."""
    if not math.isfinite(nu) or not nu > MIN_NU:
        return 'nu must exceed 1/2'
    return None


def _check_level(n: int) -> str | None:
    """Ensure the excitation level is a non-negative integer."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        return f'n must be a non-negative integer, got {n!r}'
    return None


def validate_levels(nu: float, n: int) -> tuple[bool, str | None]:
    """Validate the repulsion index and excitation level.

    Args:
        nu (float): Repulsion index.
        n (int): Excitation level.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_nu(nu) or _check_level(n)
    return error is None, error


def validate_fiducial_spec(
    nu: float,
    n: int,
    xi: float,
) -> tuple[bool, str | None]:
    """Validate the parameters of an oscillator fiducial.

    Args:
        nu (float): Repulsion index.
        n (int): Excitation level.
        xi (float): Oscillator scale.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    is_valid, error = validate_levels(nu, n)
    if is_valid and (not math.isfinite(xi) or not xi > 0):
        return False, f'xi must be positive, got {xi}'
    return is_valid, error


def validate_grid(
    grid: FloatArray,
    values: FloatArray,
    order: int,
) -> tuple[bool, str | None]:
    """Validate the samples of a grid fiducial.

    Args:
        grid (FloatArray): Sample points.
        values (FloatArray): Sample values.
        order (int): Spline degree.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error: str | None = None
    if not 1 <= order <= MAX_SPLINE_ORDER:
        error = f'Spline order must be between 1 and {MAX_SPLINE_ORDER}'
    elif grid.ndim != 1 or grid.shape != values.shape:
        error = 'Grid and values must be one-dimensional of equal length'
    elif grid.size <= order:
        error = 'Grid needs more points than the spline order'
    elif not (grid[0] > 0 and np.all(np.diff(grid) > 0)):
        error = 'Grid must be positive and strictly increasing'
    elif not np.all(np.isfinite(values)) or not np.any(values != 0):
        error = 'Values must be finite and not identically zero'
    return error is None, error
