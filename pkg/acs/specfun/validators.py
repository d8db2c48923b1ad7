"""Validation utilities for special-function and quadrature inputs.

Constants:
    MIN_LAGUERRE_EXPONENT (float): Exclusive lower bound of nu.

Functions:
    validate_positive: Check a strictly positive real argument.
    validate_rule_request: Check the parameters of a quadrature rule.
    validate_interval: Check integration limits.
"""

import math

MIN_LAGUERRE_EXPONENT = -1.0


def _check_finite(value: float, name: str) -> str | None:
    if not math.isfinite(value):
        return f'{name} must be finite'
    return None


def validate_positive(value: float, name: str) -> tuple[bool, str | None]:
    """Validate a strictly positive real argument.

    Args:
        value (float): The value to check.
        name (str): Parameter name used in the message.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_finite(value, name)
    if error is None and value <= 0:
        error = f'{name} must be positive, got {value}'
    return error is None, error


def validate_rule_request(
    order: int,
    exponent: float,
    *,
    laguerre: bool,
) -> tuple[bool, str | None]:
    """Validate the order and weight exponent of a fixed rule.

    Args:
        order (int): Number of nodes.
        exponent (float): Laguerre weight exponent nu.
        laguerre (bool): Whether the rule is of Laguerre kind.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if order < 1:
        return False, f'Rule order must be at least 1, got {order}'
    if laguerre and not exponent > MIN_LAGUERRE_EXPONENT:
        return False, f'Laguerre exponent must exceed -1, got {exponent}'
    return True, None


def validate_interval(lower: float, upper: float) -> tuple[bool, str | None]:
    """Validate integration limits.

    Args:
        lower (float): Finite lower limit.
        upper (float): Upper limit, possibly ``inf``.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_finite(lower, 'Lower limit')
    if error is None and not upper > lower:
        error = f'Upper limit {upper} must exceed lower limit {lower}'
    return error is None, error
