"""Validation utilities for coherent-state labels.

Constants:
    MAX_LEVEL (int): Largest excitation level accepted for a label.

Functions:
    validate_label: Validate a phase-space label (q, p).
    validate_cs_params: Validate (q, p, nu, n).
    validate_pair: Validate that two states share the repulsion index.
    validate_superposition: Validate states and amplitudes of a sum.
"""

import math
from collections.abc import Sequence

from acs.fiducial.validators import validate_levels

MAX_LEVEL = 64


def _check_position(q: float) -> str | None:
    """Ensure the position label lies in the half-plane."""
    if not math.isfinite(q) or not q > 0:
        return f'q must be positive, got {q}'
    return None


def _check_momentum(p: float) -> str | None:
    if not math.isfinite(p):
        return f'p must be finite, got {p}'
    return None


def validate_label(q: float, p: float) -> tuple[bool, str | None]:
    """Validate a phase-space label.

    Args:
        q (float): Position label.
        p (float): Momentum label.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_position(q) or _check_momentum(p)
    return error is None, error


def validate_cs_params(
    q: float,
    p: float,
    nu: float,
    n: int,
) -> tuple[bool, str | None]:
    """Validate the label of a coherent state.

    Args:
        q (float): Position label.
        p (float): Momentum label.
        nu (float): Repulsion index.
        n (int): Fiducial level.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    is_valid, error = validate_label(q, p)
    if is_valid:
        is_valid, error = validate_levels(nu, n)
    if is_valid and n > MAX_LEVEL:
        return False, f'n must not exceed {MAX_LEVEL}, got {n}'
    return is_valid, error


def validate_pair(nu_a: float, nu_b: float) -> tuple[bool, str | None]:
    """Ensure two coherent states belong to the same family.

    Args:
        nu_a (float): Repulsion index of the bra.
        nu_b (float): Repulsion index of the ket.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if nu_a != nu_b:
        return False, f'Overlap needs equal nu, got {nu_a} and {nu_b}'
    return True, None


def validate_superposition(
    nus: Sequence[float],
    amplitudes: Sequence[complex],
) -> tuple[bool, str | None]:
    """Validate the ingredients of a superposition.

    Args:
        nus (Sequence[float]): Repulsion index of every component.
        amplitudes (Sequence[complex]): Coefficient of every component.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if not nus:
        return False, 'A superposition needs at least one state'
    if len(nus) != len(amplitudes):
        return False, 'States and amplitudes must have equal length'
    if len(set(nus)) != 1:
        return False, 'All states of a superposition must share nu'
    if not any(abs(value) > 0 for value in amplitudes):
        return False, 'Amplitudes must not all vanish'
    return True, None
