"""Validation utilities for semiclassical trajectories.

Functions:
    validate_point: Validate a phase-space point.
    validate_times: Validate a sequence of evaluation times.
"""

import math
from collections.abc import Sequence

from acs.coherent.validators import validate_label


def _check_finite_times(times: Sequence[float]) -> str | None:
    """Ensure every time is a finite number."""
    if any(not math.isfinite(t) for t in times):
        return 'Times must be finite'
    return None


def validate_point(q: float, p: float) -> tuple[bool, str | None]:
    """Validate a point of the half-plane.

    Args:
        q (float): Position, positive.
        p (float): Momentum.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    return validate_label(q, p)


def validate_times(times: Sequence[float]) -> tuple[bool, str | None]:
    """Validate the times a trajectory is sampled at.

    Args:
        times (Sequence[float]): The evaluation times.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if len(times) == 0:
        return False, 'At least one time is required'
    error = _check_finite_times(times)
    return error is None, error
