"""Fiducial vector and moment report types.

This module defines the oscillator fiducial :class:`FiducialSpec`, the
sampled :class:`GridFiducial` and the tagged :class:`Moment` values that
keep divergent integrals distinct from finite ones.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Protocol

import numpy as np
import numpy.typing as npt
from loguru import logger
from scipy.differentiate import derivative
from scipy.interpolate import make_interp_spline

from acs.errors import ConvergenceError, DivergenceError, ParameterError
from acs.fiducial.validators import validate_fiducial_spec, validate_grid
from acs.specfun import FloatArray, legendre_panels, oscillator_table

SUPPORT_MARGIN = 80.0
GRID_PANEL_ORDER = 6
GRID_DERIVATIVE_RTOL = 1e-6


class RadialState(Protocol):
    """A normalized function on the half-line sampled on demand.

    Attributes:
        support: Point beyond which the function is negligible.
        edge_exponent: Power ``beta`` with ``f(x) ~ x^beta`` at 0;
            ``inf`` for functions flat at the origin.
    """

    @property
    def support(self) -> float:
        """Point beyond which the function is negligible."""
        ...

    @property
    def edge_exponent(self) -> float:
        """Small-x exponent of the function."""
        ...

    def __call__(self, x: FloatArray) -> npt.NDArray[Any]:
        """Evaluate the function at non-negative points."""
        ...


@dataclass(frozen=True)
class FiducialSpec:
    """Eigenvector Phi_n of the radial oscillator selected by (nu, n, xi).

    Attributes:
        nu (float): Repulsion index, greater than 1/2
        n (int): Excitation level
        xi (float): Oscillator scale
    """

    nu: float
    n: int
    xi: float

    def __post_init__(self) -> None:
        """Validate the parameters.

        Raises:
            ParameterError: If a parameter is out of range
        """
        is_valid, error = validate_fiducial_spec(self.nu, self.n, self.xi)
        if not is_valid:
            raise ParameterError(str(error))

    @property
    def repulsion(self) -> float:
        """Coefficient ``nu^2 - 1/4`` of the repulsive potential."""
        return self.nu * self.nu - 0.25

    @property
    def level_factor(self) -> float:
        """The factor ``2n + nu + 1`` of the eigenvalue."""
        return 2 * self.n + self.nu + 1

    @property
    def support(self) -> float:
        """Point beyond which Phi_n is below double precision."""
        return math.sqrt(
            (4 * self.n + 2 * self.nu + SUPPORT_MARGIN) / self.xi,
        )

    @property
    def edge_exponent(self) -> float:
        """Phi_n behaves like ``x^(nu + 1/2)`` at the origin."""
        return self.nu + 0.5

    def __call__(self, x: FloatArray) -> FloatArray:
        """Evaluate Phi_n.

        Args:
            x (FloatArray): Non-negative points

        Returns:
            FloatArray: Phi_n(x)
        """
        return oscillator_table(self.n + 1, self.nu, self.xi, x)[self.n]

    def to_dict(self) -> dict[str, object]:
        """Convert the fiducial parameters to a dictionary.

        Returns:
            dict: nu, n and xi
        """
        return {'nu': self.nu, 'n': self.n, 'xi': self.xi}


@dataclass(frozen=True)
class Moment:
    """A moment or constant that may diverge.

    Attributes:
        label (str): Name such as ``'c_-4'`` or ``'K'``
        value (float | None): Finite value, ``None`` when divergent
    """

    label: str
    value: float | None

    @property
    def divergent(self) -> bool:
        """Whether the underlying integral diverges."""
        return self.value is None

    def require(self) -> float:
        """Return the finite value.

        Returns:
            float: The value

        Raises:
            DivergenceError: If the moment diverges
        """
        if self.value is None:
            msg = f'{self.label} diverges for this fiducial'
            raise DivergenceError(msg, {'moment': self.label})
        return self.value

    def to_dict(self) -> dict[str, object]:
        """Convert the moment to a report entry.

        Returns:
            dict: Label, value and divergence flag
        """
        return {
            'label': self.label,
            'value': self.value,
            'divergent': self.divergent,
        }


@dataclass(frozen=True)
class DerivativeConstants:
    """The constants ``C = int psi'^2`` and ``K = int psi'^2 / y^2``.

    Attributes:
        kinetic (float): C
        repulsive (Moment): K, divergent for slowly vanishing fiducials
    """

    kinetic: float
    repulsive: Moment


@dataclass(frozen=True)
class ConstraintReport:
    """Residuals of the consistency constraints of a fiducial.

    Attributes:
        residuals (dict[str, float]): Relative residual per constraint
        threshold (float): Largest accepted residual
    """

    residuals: dict[str, float]
    threshold: float

    @property
    def satisfied(self) -> bool:
        """Whether every residual is below the threshold."""
        return all(value < self.threshold for value in self.residuals.values())

    @property
    def violated(self) -> list[str]:
        """Names of the constraints above the threshold."""
        return [
            name
            for name, value in self.residuals.items()
            if not value < self.threshold
        ]

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a dictionary.

        Returns:
            dict: Residuals, threshold and verdict
        """
        return {
            'residuals': self.residuals,
            'threshold': self.threshold,
            'satisfied': self.satisfied,
            'violated': self.violated,
        }


@dataclass(frozen=True)
class MomentReport:
    """Everything known about one oscillator fiducial.

    Attributes:
        spec (FiducialSpec): The fiducial
        xi_star (float): Scale making ``c_-3 = 1``
        omega (float): Eigenvalue at ``spec.xi``
        omega_tilde (float): Eigenvalue at ``xi_star``
        g_values (dict[str, float]): G_n(alpha, nu) by alpha
        moments (tuple[Moment, ...]): c_gamma for the requested gammas
        constants (DerivativeConstants): C and K
        constraints (ConstraintReport): Constraint residuals
    """

    spec: FiducialSpec
    xi_star: float
    omega: float
    omega_tilde: float
    g_values: dict[str, float]
    moments: tuple[Moment, ...]
    constants: DerivativeConstants
    constraints: ConstraintReport = field(repr=False)

    def to_dict(self) -> dict[str, object]:
        """Convert the report to a JSON-ready dictionary.

        Returns:
            dict: Report contents
        """
        return {
            'fiducial': self.spec.to_dict(),
            'xi_star': self.xi_star,
            'omega': self.omega,
            'omega_tilde': self.omega_tilde,
            'g_values': self.g_values,
            'moments': [moment.to_dict() for moment in self.moments],
            'C': self.constants.kinetic,
            'K': self.constants.repulsive.to_dict(),
            'constraints': self.constraints.to_dict(),
        }


class GridFiducial:
    """A fiducial vector sampled on a strictly increasing positive grid.

    The samples are interpolated by a spline in ``t = ln x`` and the
    function is taken as zero outside the grid. Construction normalizes
    the interpolant with the same knot-aligned Gauss-Legendre rule used
    by every later integral.
    """

    def __init__(
        self,
        grid: npt.ArrayLike,
        values: npt.ArrayLike,
        order: int = 5,
    ) -> None:
        """Interpolate and normalize the samples.

        Args:
            grid (ArrayLike): Strictly increasing positive points
            values (ArrayLike): Real samples at the grid points
            order (int): Spline degree, 1 to 5

        Raises:
            ParameterError: If the grid or samples are malformed
        """
        points = np.asarray(grid, dtype=np.float64)
        samples = np.asarray(values, dtype=np.float64)
        is_valid, error = validate_grid(points, samples, order)
        if not is_valid:
            raise ParameterError(str(error))

        self.order = order
        self._log_grid = np.log(points)
        t_nodes, t_weights = legendre_panels(self._log_grid, GRID_PANEL_ORDER)
        self._nodes = np.exp(t_nodes)
        self._weights = t_weights * self._nodes

        raw = make_interp_spline(self._log_grid, samples, k=order)
        norm = math.sqrt(float(np.sum(self._weights * raw(t_nodes) ** 2)))
        self.grid = points
        self.values = samples / norm
        self._spline = make_interp_spline(self._log_grid, self.values, k=order)
        self.grid.setflags(write=False)
        self.values.setflags(write=False)

    @classmethod
    def from_function(
        cls,
        function: Callable[[FloatArray], FloatArray],
        x_min: float,
        x_max: float,
        count: int,
        order: int = 5,
    ) -> 'GridFiducial':
        """Sample a function on a log-uniform grid.

        Args:
            function (Callable): Function to sample
            x_min (float): First grid point
            x_max (float): Last grid point
            count (int): Number of points
            order (int): Spline degree

        Returns:
            GridFiducial: The normalized fiducial
        """
        grid = np.geomspace(x_min, x_max, count)
        return cls(grid, function(grid), order)

    @classmethod
    def rapidly_decreasing(cls, count: int = 2048) -> 'GridFiducial':
        """The test fiducial ``exp(-(x + 1/x))`` on ``[1e-4, 50]``.

        Args:
            count (int): Number of grid points

        Returns:
            GridFiducial: The normalized fiducial
        """
        return cls.from_function(
            lambda x: np.exp(-(x + 1.0 / x)),
            1e-4,
            50.0,
            count,
        )

    @property
    def support(self) -> float:
        """Last grid point."""
        return float(self.grid[-1])

    @property
    def edge_exponent(self) -> float:
        """The function vanishes identically below the grid."""
        return math.inf

    def quadrature(self) -> tuple[FloatArray, FloatArray]:
        """Nodes and dx-weights of the knot-aligned rule.

        Returns:
            tuple[FloatArray, FloatArray]: Nodes and weights in x
        """
        return self._nodes, self._weights

    def __call__(self, x: FloatArray) -> FloatArray:
        """Evaluate the interpolant, zero outside the grid.

        Args:
            x (FloatArray): Non-negative points

        Returns:
            FloatArray: Values
        """
        points = np.atleast_1d(np.asarray(x, dtype=np.float64))
        result = np.zeros_like(points)
        inside = (points >= self.grid[0]) & (points <= self.grid[-1])
        result[inside] = self._spline(np.log(points[inside]))
        return result

    def derivative(self, x: FloatArray) -> FloatArray:
        """First derivative by Richardson-extrapolated differences.

        Args:
            x (FloatArray): Points inside the grid

        Returns:
            FloatArray: d psi/dx

        Raises:
            ConvergenceError: If the extrapolation does not settle
        """
        points = np.atleast_1d(np.asarray(x, dtype=np.float64))
        result = derivative(
            self._spline,
            np.log(points),
            tolerances={'atol': 1e-14, 'rtol': 1e-10},
            initial_step=1e-3,
        )
        slope = np.asarray(result.df)
        scale = max(float(np.max(np.abs(slope))), 1e-300)
        worst = float(np.max(np.where(result.success, 0.0, result.error)))
        if worst > GRID_DERIVATIVE_RTOL * scale:
            logger.warning(f'Finite-difference derivative error {worst}')
            msg = 'Finite-difference extrapolation did not converge'
            raise ConvergenceError(msg, {'error': worst})
        return slope / points

    def rescaled(self, factor: float) -> 'GridFiducial':
        """Return ``lambda^(-1/2) psi(x / lambda)``.

        Args:
            factor (float): Dilation lambda, positive

        Returns:
            GridFiducial: The dilated fiducial
        """
        if not factor > 0:
            msg = f'Dilation factor must be positive, got {factor}'
            raise ParameterError(msg)
        return GridFiducial(
            factor * self.grid,
            self.values / math.sqrt(factor),
            self.order,
        )
