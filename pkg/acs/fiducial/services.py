"""Fiducial vectors, their moments and the consistency constraints.

The oscillator eigenvectors are evaluated through the Laguerre tables of
:mod:`acs.specfun`. Moments of a :class:`FiducialSpec` use the closed
forms of ``G_n`` when ``n <= 2`` and Gauss-Laguerre quadrature
otherwise; a :class:`GridFiducial` is integrated on its own knot-aligned
rule. Functions accepting either kind dispatch on the argument type.
"""

import math
from collections.abc import Sequence
from functools import singledispatch
from typing import Literal

import numpy as np
from loguru import logger

from acs.errors import ParameterError
from acs.fiducial.models import (
    ConstraintReport,
    DerivativeConstants,
    FiducialSpec,
    GridFiducial,
    Moment,
    MomentReport,
)
from acs.fiducial.validators import validate_levels
from acs.specfun import (
    FloatArray,
    RuleKind,
    build_rule,
    graded_panels,
    laguerre,
    log_gamma,
    oscillator_derivative_table,
    oscillator_table,
)

DEFAULT_GAMMAS = (-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0)
CLOSED_FORM_MAX_LEVEL = 2
QUADRATURE_EXTRA_ORDER = 8

GMethod = Literal['auto', 'closed', 'quadrature']


def _require_levels(nu: float, n: int) -> None:
    is_valid, error = validate_levels(nu, n)
    if not is_valid:
        raise ParameterError(str(error))


def _g_closed(n: int, alpha: float, nu: float) -> float:
    s = nu + alpha
    log_ratio = log_gamma(s) - log_gamma(nu + n + 1)
    if n == 0:
        return math.exp(log_ratio)
    if n == 1:
        return math.exp(log_ratio) * ((alpha - 1) ** 2 + nu + alpha)
    a = 0.5 * (nu + 1) * (nu + 2)
    b = -(nu + 2)
    c = 0.5
    rising = [1.0, s, s * (s + 1), s * (s + 1) * (s + 2)]
    rising.append(rising[3] * (s + 3))
    bracket = (
        a * a
        + 2 * a * b * rising[1]
        + (b * b + 2 * a * c) * rising[2]
        + 2 * b * c * rising[3]
        + c * c * rising[4]
    )
    return 2.0 * math.exp(log_ratio) * bracket


def _g_quadrature(n: int, alpha: float, nu: float) -> float:
    rule = build_rule(
        RuleKind.GAUSS_LAGUERRE,
        order=n + QUADRATURE_EXTRA_ORDER,
        exponent=nu + alpha - 1,
    )
    polynomial = laguerre(n, nu, rule.nodes)
    log_norm = math.lgamma(n + 1) - log_gamma(nu + n + 1)
    return math.exp(log_norm) * float(np.sum(rule.weights * polynomial**2))


def g_moment(
    n: int,
    alpha: float,
    nu: float,
    method: GMethod = 'auto',
) -> Moment:
    """The normalized Laguerre moment G_n(alpha, nu).

    ``G_n(alpha, nu) = n!/Gamma(nu+n+1) int x^(nu+alpha-1) L_n^nu(x)^2
    e^-x dx``, so that ``G_n(1, nu) = 1``.

    Args:
        n (int): Level
        alpha (float): Power shift
        nu (float): Laguerre parameter, positive
        method (GMethod): Closed form (n <= 2 only), quadrature or auto

    Returns:
        Moment: The value, divergent when ``alpha + nu <= 0``
    """
    label = f'G_{n}({alpha:g},{nu:g})'
    if n < 0 or not nu > 0:
        msg = f'G_n needs n >= 0 and nu > 0, got n={n}, nu={nu}'
        raise ParameterError(msg)
    if not nu + alpha > 0:
        return Moment(label, None)
    if method == 'closed' and n > CLOSED_FORM_MAX_LEVEL:
        msg = f'No closed form for G_n with n={n}'
        raise ParameterError(msg)
    use_closed = method == 'closed' or (
        method == 'auto' and n <= CLOSED_FORM_MAX_LEVEL
    )
    value = _g_closed(n, alpha, nu) if use_closed else _g_quadrature(
        n,
        alpha,
        nu,
    )
    return Moment(label, value)


def xi_star(nu: float, n: int) -> float:
    """Scale at which ``c_-3(Phi_n) = 1``.

    Args:
        nu (float): Repulsion index
        n (int): Level

    Returns:
        float: ``G_n(3/2, nu)^2``
    """
    _require_levels(nu, n)
    return g_moment(n, 1.5, nu).require() ** 2


def make_spec(nu: float, n: int, xi: float | None = None) -> FiducialSpec:
    """Build a fiducial, at the scale ``xi_star(nu, n)`` by default.

    Args:
        nu (float): Repulsion index
        n (int): Level
        xi (float | None): Explicit scale, for tests off the scaled point

    Returns:
        FiducialSpec: The fiducial
    """
    _require_levels(nu, n)
    return FiducialSpec(nu, n, xi_star(nu, n) if xi is None else xi)


def omega(spec: FiducialSpec) -> float:
    """Eigenvalue ``2 xi (2n + nu + 1)`` of Phi_n.

    Args:
        spec (FiducialSpec): The fiducial

    Returns:
        float: The eigenvalue
    """
    return 2.0 * spec.xi * spec.level_factor


def omega_tilde(nu: float, n: int) -> float:
    """Eigenvalue of Phi_n at the scale ``xi_star(nu, n)``.

    Args:
        nu (float): Repulsion index
        n (int): Level

    Returns:
        float: ``2 xi_star (2n + nu + 1)``
    """
    return omega(make_spec(nu, n))


def c0_level(nu: float, n: int) -> float:
    """``c_0(Phi_n)`` at the scaled point, ``G_n(3/2)^2 G_n(0)``.

    Args:
        nu (float): Repulsion index
        n (int): Level

    Returns:
        float: The normalization constant of the phase-space measure
    """
    return xi_star(nu, n) * g_moment(n, 0.0, nu).require()


def phi(spec: FiducialSpec, x: FloatArray) -> FloatArray:
    """Evaluate Phi_n.

    Args:
        spec (FiducialSpec): The fiducial
        x (FloatArray): Non-negative points

    Returns:
        FloatArray: Phi_n(x), zero at the origin
    """
    return spec(x)


def phi_derivatives(
    spec: FiducialSpec,
    x: FloatArray,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Phi_n with its first and second derivatives.

    Args:
        spec (FiducialSpec): The fiducial
        x (FloatArray): Positive points

    Returns:
        tuple[FloatArray, FloatArray, FloatArray]: Phi, Phi', Phi''
    """
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n, nu, xi = spec.n, spec.nu, spec.xi
    table = oscillator_table(n + 1, nu, xi, points)
    first = oscillator_derivative_table(table, nu, xi, points)

    drift = (nu + 0.5 + 2 * n) / points - xi * points
    drift_slope = -(nu + 0.5 + 2 * n) / points**2 - xi
    second = drift_slope * table[n] + drift * first[n]
    if n > 0:
        coupling = 2.0 * math.sqrt(n * (n + nu)) / points
        second += (coupling / points) * table[n - 1] - coupling * first[n - 1]
    return table[n], first[n], second


def radial_rule(spec: FiducialSpec) -> tuple[FloatArray, FloatArray]:
    """Composite rule covering the support of Phi_n.

    Args:
        spec (FiducialSpec): The fiducial

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights on [0, support]
    """
    return graded_panels(spec.support, uniform=40 + 4 * spec.n)


def eigen_residual(spec: FiducialSpec) -> float:
    """Relative norm ``||(H0 - omega_n) Phi_n|| / omega_n``.

    Args:
        spec (FiducialSpec): The fiducial

    Returns:
        float: The relative residual
    """
    nodes, weights = radial_rule(spec)
    value, _, second = phi_derivatives(spec, nodes)
    residual = (
        -second
        + (spec.repulsion / nodes**2 + spec.xi**2 * nodes**2 - omega(spec))
        * value
    )
    return math.sqrt(float(np.sum(weights * residual**2))) / omega(spec)


def inner_product(first: FiducialSpec, second: FiducialSpec) -> float:
    """``<Phi_m | Phi_n>`` by quadrature.

    Args:
        first (FiducialSpec): Bra fiducial
        second (FiducialSpec): Ket fiducial

    Returns:
        float: The inner product
    """
    upper = max(first.support, second.support)
    panels = 40 + 4 * (first.n + second.n)
    nodes, weights = graded_panels(upper, uniform=panels)
    return float(np.sum(weights * first(nodes) * second(nodes)))


def c_gamma(spec: FiducialSpec, gamma: float) -> Moment:
    """``c_gamma(Phi_n) = int x^(-gamma-2) Phi_n^2 dx`` in closed form.

    Uses ``c_gamma = xi^(1 + gamma/2) G_n(-gamma/2, nu)``.

    Args:
        spec (FiducialSpec): The fiducial
        gamma (float): Moment index; finite only for ``gamma < 2 nu``

    Returns:
        Moment: The moment, divergent for ``gamma >= 2 nu``
    """
    label = f'c_{gamma:g}'
    g_value = g_moment(spec.n, -gamma / 2.0, spec.nu).value
    if g_value is None:
        return Moment(label, None)
    return Moment(label, spec.xi ** (1.0 + gamma / 2.0) * g_value)


def _quadrature(
    fiducial: FiducialSpec | GridFiducial,
) -> tuple[FloatArray, FloatArray]:
    if isinstance(fiducial, GridFiducial):
        return fiducial.quadrature()
    return radial_rule(fiducial)


@singledispatch
def moment(fiducial: object, gamma: float) -> Moment:
    """``c_gamma`` of any supported fiducial.

    Args:
        fiducial (object): FiducialSpec or GridFiducial
        gamma (float): Moment index

    Returns:
        Moment: The moment
    """
    msg = f'Unsupported fiducial type {type(fiducial).__name__}'
    raise ParameterError(msg)


@moment.register
def _(fiducial: FiducialSpec, gamma: float) -> Moment:
    return c_gamma(fiducial, gamma)


@moment.register
def _(fiducial: GridFiducial, gamma: float) -> Moment:
    return moment_by_quadrature(fiducial, gamma)


def moment_by_quadrature(
    fiducial: FiducialSpec | GridFiducial,
    gamma: float,
) -> Moment:
    """``c_gamma`` by direct quadrature of ``x^(-gamma-2) psi^2``.

    Args:
        fiducial (FiducialSpec | GridFiducial): The fiducial
        gamma (float): Moment index

    Returns:
        Moment: The moment, divergent when the origin is not integrable
    """
    label = f'c_{gamma:g}'
    if 2 * fiducial.edge_exponent - gamma - 2 <= -1:
        return Moment(label, None)
    nodes, weights = _quadrature(fiducial)
    values = fiducial(nodes)
    return Moment(
        label,
        float(np.sum(weights * nodes ** (-gamma - 2.0) * values**2)),
    )


def fiducial_derivative(
    fiducial: FiducialSpec | GridFiducial,
    x: FloatArray,
) -> FloatArray:
    """First derivative of a fiducial.

    Args:
        fiducial (FiducialSpec | GridFiducial): The fiducial
        x (FloatArray): Positive points

    Returns:
        FloatArray: psi'(x)
    """
    if isinstance(fiducial, GridFiducial):
        return fiducial.derivative(x)
    return phi_derivatives(fiducial, x)[1]


def derivative_constants(
    fiducial: FiducialSpec | GridFiducial,
) -> DerivativeConstants:
    """The constants ``C = int psi'^2`` and ``K = int psi'^2 / y^2``.

    Phi_n uses its analytic derivative; a grid fiducial uses Richardson
    extrapolated differences. K is flagged divergent when ``psi'^2/y^2``
    is not integrable at the origin.

    Args:
        fiducial (FiducialSpec | GridFiducial): The fiducial

    Returns:
        DerivativeConstants: C and K
    """
    nodes, weights = _quadrature(fiducial)
    slope_squared = fiducial_derivative(fiducial, nodes) ** 2
    kinetic = float(np.sum(weights * slope_squared))
    if 2 * fiducial.edge_exponent - 4 <= -1:
        logger.debug(f'K diverges for edge exponent {fiducial.edge_exponent}')
        return DerivativeConstants(kinetic, Moment('K', None))
    repulsive = float(np.sum(weights * slope_squared / nodes**2))
    return DerivativeConstants(kinetic, Moment('K', repulsive))


def repulsion_identity(fiducial: GridFiducial) -> tuple[float, float]:
    """Both sides of ``K - (3/2) c_2 = int [y^2 phi'^2 + phi^2/2] dy``.

    Here ``phi(y) = y psi(1/y)``; the right side is evaluated on the
    same nodes through ``y = 1/x``.

    Args:
        fiducial (GridFiducial): A rapidly decreasing fiducial

    Returns:
        tuple[float, float]: Left and right side
    """
    nodes, weights = fiducial.quadrature()
    values = fiducial(nodes)
    slope = fiducial.derivative(nodes)
    constants = derivative_constants(fiducial)
    c_two = moment(fiducial, 2.0).require()
    left = constants.repulsive.require() - 1.5 * c_two
    right = float(
        np.sum(
            weights
            * ((values - nodes * slope) ** 2 + 0.5 * values**2)
            / nodes**4,
        ),
    )
    return left, right


def rescale(fiducial: GridFiducial, factor: float) -> GridFiducial:
    """Dilate a grid fiducial, ``c_gamma -> factor^(-gamma-2) c_gamma``.

    Args:
        fiducial (GridFiducial): The fiducial
        factor (float): Dilation lambda

    Returns:
        GridFiducial: ``lambda^(-1/2) psi(x/lambda)``
    """
    return fiducial.rescaled(factor)


def _relative(left: float, right: float, *terms: float) -> float:
    scale = max(abs(left), abs(right), *(abs(term) for term in terms))
    return abs(left - right) / scale if scale > 0 else 0.0


def validate(spec: FiducialSpec, threshold: float = 1e-8) -> ConstraintReport:
    """Residuals of the four consistency constraints of Phi_n.

    The constraints are ``C = (nu^2-1/4)(c_1 c_-4 - c_0)``,
    ``(nu^2-1/4) c_1 = xi^2``, ``C + (nu^2-1/4) c_0 + xi^2 c_-4 = omega``
    and ``C + (nu^2-1/4) c_0 - xi^2 c_-4 = 0``. Only the first two depend
    on ``xi = xi_star``; the last two hold at every scale. Violations are
    reported, never raised.

    Args:
        spec (FiducialSpec): The fiducial
        threshold (float): Largest accepted relative residual

    Returns:
        ConstraintReport: Residual per constraint
    """
    repulsion = spec.repulsion
    c_one = c_gamma(spec, 1.0).require()
    c_zero = c_gamma(spec, 0.0).require()
    c_minus_four = c_gamma(spec, -4.0).require()
    kinetic = derivative_constants(spec).kinetic
    potential = repulsion * c_zero
    confinement = spec.xi**2 * c_minus_four

    residuals = {
        'kinetic_constant': _relative(
            kinetic,
            repulsion * (c_one * c_minus_four - c_zero),
        ),
        'scaling': _relative(repulsion * c_one, spec.xi**2),
        'energy': _relative(
            kinetic + potential + confinement,
            omega(spec),
        ),
        'virial': _relative(
            kinetic + potential,
            confinement,
            kinetic,
            potential,
        ),
    }
    report = ConstraintReport(residuals, threshold)
    if not report.satisfied:
        logger.warning(
            f'Constraints violated for {spec.to_dict()}: {report.violated}',
        )
    return report


def moment_report(
    spec: FiducialSpec,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    threshold: float = 1e-8,
) -> MomentReport:
    """Collect scales, eigenvalues, moments, constants and constraints.

    Args:
        spec (FiducialSpec): The fiducial
        gammas (Sequence[float]): Moment indices to tabulate
        threshold (float): Constraint threshold

    Returns:
        MomentReport: The report
    """
    g_values = {
        f'{alpha:g}': value
        for alpha in (-0.5, 0.0, 1.0, 1.5, 2.0)
        if (value := g_moment(spec.n, alpha, spec.nu).value) is not None
    }
    return MomentReport(
        spec=spec,
        xi_star=xi_star(spec.nu, spec.n),
        omega=omega(spec),
        omega_tilde=omega_tilde(spec.nu, spec.n),
        g_values=g_values,
        moments=tuple(c_gamma(spec, gamma) for gamma in gammas),
        constants=derivative_constants(spec),
        constraints=validate(spec, threshold),
    )
