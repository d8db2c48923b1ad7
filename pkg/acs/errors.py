"""Exception hierarchy shared by every sub-package.

Each exception carries a machine-readable ``reason`` and the process exit
code the command line maps it to.
"""

from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit codes of the command line.

    Attributes:
        SUCCESS: Run finished and every check passed.
        INVALID_INPUT: Parameters rejected before any computation.
        NON_CONVERGENCE: A numerical check or tolerance was not met.
        INTERNAL_ERROR: An unexpected exception escaped the command. It
            propagates, so the interpreter exits with status 1 and the
            manifest records that status with reason ``internal_error``.
            The reason, not the code, tells it apart from invalid input.
    """

    SUCCESS = 0
    INVALID_INPUT = 1
    NON_CONVERGENCE = 2
    INTERNAL_ERROR = 1  # noqa: PIE796


class AcsError(Exception):
    """Base class of all library errors."""

    reason = 'error'
    exit_code = ExitCode.NON_CONVERGENCE

    def __init__(
        self,
        message: str,
        details: dict[str, object] | None = None,
    ) -> None:
        """Store the message and optional diagnostic values.

        Args:
            message (str): Human-readable description
            details (dict[str, object] | None): Values for the manifest
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, object]:
        """Convert the error to a manifest failure entry.

        Returns:
            dict: Reason, message and details
        """
        return {
            'reason': self.reason,
            'message': self.message,
            'details': self.details,
        }


class ParameterError(AcsError, ValueError):
    """Input outside the documented domain of an operation."""

    reason = 'invalid_input'
    exit_code = ExitCode.INVALID_INPUT


class DomainError(ParameterError):
    """Special function evaluated outside its domain."""

    reason = 'domain_error'


class DivergenceError(AcsError):
    """A required moment or constant diverges for the given fiducial."""

    reason = 'divergent_moment'
    exit_code = ExitCode.INVALID_INPUT


class ConvergenceError(AcsError):
    """Tolerance, truncation or stability requirement not met."""

    reason = 'non_convergence'


class QuadratureError(ConvergenceError):
    """An integrand evaluation produced NaN."""

    reason = 'quadrature_error'
