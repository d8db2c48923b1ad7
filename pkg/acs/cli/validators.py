"""Validation utilities for command-line input and emitted data.

Constants:
    MIN_EVOLVE_SIZE (int): Smallest basis accepted by ``evolve``.
    FIGURE_IDS (tuple[str, ...]): Reproducible figures.
    FIDUCIAL_CHOICES (tuple[str, ...]): Fiducials accepted by ``quantize``.

Functions:
    parse_float_list: Parse a comma-separated list of numbers.
    parse_level_list: Parse a comma-separated list of levels.
    validate_evolve_size: Validate the truncation of ``evolve``.
    validate_grid_shape: Validate the shape of grid values.
    validate_grid_values: Validate that grid values are finite.
"""

import math

import numpy as np
import numpy.typing as npt

MIN_EVOLVE_SIZE = 32
FIGURE_IDS = ('fig1', 'fig2', 'fig3')
FIDUCIAL_CHOICES = ('phi0', 'grid', 'grid-unit')


def _split(text: str) -> list[str]:
    """Split a comma-separated list, ignoring spaces."""
    return [item.strip() for item in text.split(',') if item.strip()]


def parse_float_list(
    text: str,
    name: str,
) -> tuple[tuple[float, ...] | None, str | None]:
    """Parse a comma-separated list of finite numbers.

    Args:
        text (str): The list, for example ``'0,0.25,1'``.
        name (str): Option name used in the message.

    Returns:
        tuple: The numbers, or None with an error message.
    """
    items = _split(text)
    if not items:
        return None, f'{name} must list at least one value'
    try:
        values = tuple(float(item) for item in items)
    except ValueError:
        return None, f'{name} must be comma-separated numbers, got {text!r}'
    if not all(math.isfinite(value) for value in values):
        return None, f'{name} must be finite'
    return values, None


def parse_level_list(text: str) -> tuple[tuple[int, ...] | None, str | None]:
    """Parse a comma-separated list of non-negative levels.

    Args:
        text (str): The list, for example ``'0,1,2'``.

    Returns:
        tuple: The levels, or None with an error message.
    """
    items = _split(text)
    if not items or not all(item.isdigit() for item in items):
        return None, f'Levels must be non-negative integers, got {text!r}'
    return tuple(int(item) for item in items), None


def validate_evolve_size(size: int) -> tuple[bool, str | None]:
    """Validate the truncation of a propagation run.

    Args:
        size (int): Number of basis functions.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if size < MIN_EVOLVE_SIZE:
        return False, f'Basis size must be at least {MIN_EVOLVE_SIZE}'
    return True, None


def validate_grid_shape(
    counts: tuple[int, ...],
    values: npt.NDArray[np.float64],
) -> tuple[bool, str | None]:
    """Ensure the values hold one entry per grid node.

    Args:
        counts (tuple[int, ...]): Point count of every axis.
        values (NDArray): Grid values.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if values.shape != counts:
        return False, (
            f'Grid values have shape {values.shape}, axes require {counts}'
        )
    return True, None


def validate_grid_values(
    values: npt.NDArray[np.float64],
) -> tuple[bool, str | None]:
    """Ensure grid values are finite.

    Args:
        values (NDArray): Grid values.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    missing = int(np.count_nonzero(~np.isfinite(values)))
    if missing:
        return False, f'Grid holds {missing} non-finite values'
    return True, None
