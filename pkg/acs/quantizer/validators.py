"""Validation utilities for quantized symbols.

Constants:
    SYMBOL_PATTERN (Pattern): Accepted textual form of a symbol.

Functions:
    validate_symbol_text: Validate the textual form of a symbol.
    validate_exponent: Validate the exponent of a position power.
"""

import math
import re

SYMBOL_PATTERN = re.compile(
    r'^(?:q(?:\^(?P<alpha>[-+]?\d+(?:\.\d+)?))?|1|p|qp|p\^2)$',
)


def _check_text(text: object) -> str | None:
    """Ensure the symbol is a non-empty string."""
    if not isinstance(text, str) or not text.strip():
        return 'Symbol must be a non-empty string'
    return None


def _check_form(text: str) -> str | None:
    """Ensure the symbol is one of the supported families."""
    if SYMBOL_PATTERN.match(text.replace(' ', '')) is None:
        return (
            f"Unsupported symbol '{text}', expected q^alpha, p, qp or p^2"
        )
    return None


def validate_symbol_text(text: object) -> tuple[bool, str | None]:
    """Validate the textual form of a symbol.

    Args:
        text (object): The provided symbol.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    error = _check_text(text)
    if error is None and isinstance(text, str):
        error = _check_form(text)
    return error is None, error


def validate_exponent(alpha: float) -> tuple[bool, str | None]:
    """Validate the exponent of a position power.

    Args:
        alpha (float): The exponent.

    Returns:
        tuple[bool, str | None]: Validity flag and error message.
    """
    if not math.isfinite(alpha):
        return False, f'Exponent must be finite, got {alpha}'
    return True, None
