"""Symbols and verification reports of covariant integral quantization."""

from dataclasses import dataclass
from enum import Enum

from acs.coherent import PhaseSpaceResult
from acs.errors import ParameterError
from acs.quantizer.validators import (
    SYMBOL_PATTERN,
    validate_exponent,
    validate_symbol_text,
)


class SymbolKind(Enum):
    """Families of classical observables that can be quantized.

    Attributes:
        Q_POWER: ``q^alpha``.
        P_LINEAR: ``p``.
        D_SYMBOL: ``qp``, the dilation symbol.
        P_SQUARED: ``p^2``.
    """

    Q_POWER = 'q_power'
    P_LINEAR = 'p_linear'
    D_SYMBOL = 'd_symbol'
    P_SQUARED = 'p_squared'


@dataclass(frozen=True)
class SymbolSpec:
    """A classical observable ``f(q, p) = q^a p^m``.

    Attributes:
        kind (SymbolKind): The family
        alpha (float): Exponent of ``q`` for ``Q_POWER``, otherwise unused
    """

    kind: SymbolKind
    alpha: float = 0.0

    def __post_init__(self) -> None:
        """Validate the exponent.

        Raises:
            ParameterError: If the exponent is not finite
        """
        is_valid, error = validate_exponent(self.alpha)
        if not is_valid:
            raise ParameterError(str(error))

    @classmethod
    def parse(cls, text: str) -> 'SymbolSpec':
        """Read a symbol such as ``'q^-1'``, ``'qp'`` or ``'p^2'``.

        Args:
            text (str): The symbol

        Returns:
            SymbolSpec: The parsed symbol

        Raises:
            ParameterError: If the text is not a supported symbol
        """
        is_valid, error = validate_symbol_text(text)
        if not is_valid:
            raise ParameterError(str(error))
        compact = text.replace(' ', '')
        if compact == 'p':
            return cls(SymbolKind.P_LINEAR)
        if compact == 'qp':
            return cls(SymbolKind.D_SYMBOL)
        if compact == 'p^2':
            return cls(SymbolKind.P_SQUARED)
        if compact == '1':
            return cls(SymbolKind.Q_POWER, 0.0)
        match = SYMBOL_PATTERN.match(compact)
        alpha = match.group('alpha') if match else None
        return cls(SymbolKind.Q_POWER, float(alpha or 1.0))

    @property
    def q_power(self) -> float:
        """Exponent of ``q`` in the symbol."""
        if self.kind is SymbolKind.Q_POWER:
            return self.alpha
        return 1.0 if self.kind is SymbolKind.D_SYMBOL else 0.0

    @property
    def p_power(self) -> int:
        """Exponent of ``p`` in the symbol."""
        return {
            SymbolKind.Q_POWER: 0,
            SymbolKind.P_LINEAR: 1,
            SymbolKind.D_SYMBOL: 1,
            SymbolKind.P_SQUARED: 2,
        }[self.kind]

    @property
    def label(self) -> str:
        """Printable form such as ``'q^2'``."""
        if self.kind is SymbolKind.Q_POWER:
            return f'q^{self.alpha:g}'
        return {
            SymbolKind.P_LINEAR: 'p',
            SymbolKind.D_SYMBOL: 'qp',
            SymbolKind.P_SQUARED: 'p^2',
        }[self.kind]

    def to_dict(self) -> dict[str, object]:
        """Convert the symbol to a dictionary.

        Returns:
            dict: Kind, exponent and label
        """
        return {
            'kind': self.kind.value,
            'alpha': self.alpha,
            'label': self.label,
        }


@dataclass(frozen=True)
class RatioReport:
    """Proportionality of a measured operator to its expected form.

    Attributes:
        symbol (SymbolSpec): The quantized symbol
        measured (float): Least-squares ratio to the target operator
        predicted (float): Ratio of moments predicted in closed form
        residual (float): ``||M - ratio T|| / ||M||``
        integration (PhaseSpaceResult): Error budget of the measurement
    """

    symbol: SymbolSpec
    measured: float
    predicted: float
    residual: float
    integration: PhaseSpaceResult

    @property
    def error(self) -> float:
        """Relative deviation of the measured ratio."""
        return abs(self.measured - self.predicted) / abs(self.predicted)

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a JSON-ready dictionary.

        Returns:
            dict: Measured and predicted ratios with residuals
        """
        return {
            'symbol': self.symbol.to_dict(),
            'measured': self.measured,
            'predicted': self.predicted,
            'relative_error': self.error,
            'residual': self.residual,
            'integration': self.integration.to_dict(),
        }


@dataclass(frozen=True)
class KineticFit:
    """Two-term fit of the quantized ``p^2`` against ``p^2`` and ``x^-2``.

    Attributes:
        kinetic (float): Fitted coefficient of ``p^2``
        repulsive (float): Fitted coefficient of ``x^-2``
        predicted_kinetic (float): ``c2 / c0``
        predicted_repulsive (float): ``(K - 3 c2 / 2) / c0``
        residual (float): Relative residual of the fit
        integration (PhaseSpaceResult): Error budget of the measurement
    """

    kinetic: float
    repulsive: float
    predicted_kinetic: float
    predicted_repulsive: float
    residual: float
    integration: PhaseSpaceResult

    @property
    def kinetic_error(self) -> float:
        """Relative deviation of the kinetic coefficient."""
        return abs(self.kinetic / self.predicted_kinetic - 1.0)

    @property
    def repulsive_error(self) -> float:
        """Relative deviation of the repulsive coefficient."""
        return abs(self.repulsive / self.predicted_repulsive - 1.0)

    def to_dict(self) -> dict[str, object]:
        """Convert the fit to a JSON-ready dictionary.

        Returns:
            dict: Fitted and predicted coefficients with residuals
        """
        return {
            'kinetic': self.kinetic,
            'repulsive': self.repulsive,
            'predicted_kinetic': self.predicted_kinetic,
            'predicted_repulsive': self.predicted_repulsive,
            'kinetic_error': self.kinetic_error,
            'repulsive_error': self.repulsive_error,
            'residual': self.residual,
            'integration': self.integration.to_dict(),
        }
