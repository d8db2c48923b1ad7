"""Special functions and quadrature primitives.

Every other sub-package evaluates its integrals through the helpers of
this module: generalized Gauss-Laguerre rules for polynomial moments,
composite Gauss-Legendre panels for fixed radial grids and QUADPACK for
adaptive checks.
"""

import math
from collections.abc import Callable
from typing import Any

import numpy as np
import numpy.typing as npt
from loguru import logger
from scipy import integrate as scipy_integrate
from scipy import special

from acs.errors import (
    ConvergenceError,
    DomainError,
    ParameterError,
    QuadratureError,
)
from acs.specfun.models import (
    FloatArray,
    IntegrationResult,
    QuadratureRule,
    RuleKind,
)
from acs.specfun.validators import (
    validate_interval,
    validate_positive,
    validate_rule_request,
)

Integrand = Callable[[Any], Any]

QUADPACK_PANELS_PER_LEVEL = 25
RESCALE = 1e150
WEIGHT_SUM_RTOL = 1e-10


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for positive arguments.

    Args:
        x (float): Argument, strictly positive

    Returns:
        float: log Gamma(x)

    Raises:
        DomainError: If ``x <= 0``
    """
    is_valid, error = validate_positive(x, 'x')
    if not is_valid:
        raise DomainError(str(error))
    return float(special.gammaln(x))


def laguerre(
    n: int,
    nu: float,
    y: npt.ArrayLike,
) -> npt.NDArray[np.inexact[Any]]:
    """Generalized Laguerre polynomial by upward recurrence.

    Real and complex arguments are both accepted; a scalar argument gives
    a 0-d array.

    Args:
        n (int): Degree, non-negative
        nu (float): Parameter nu
        y (ArrayLike): Evaluation points

    Returns:
        NDArray: L_n^nu(y)
    """
    if n < 0:
        msg = f'Laguerre degree must be non-negative, got {n}'
        raise ParameterError(msg)
    points = np.asarray(y)
    dtype = np.result_type(points, np.float64)
    previous = np.ones(points.shape, dtype=dtype)
    if n == 0:
        return previous
    current = (nu + 1.0 - points).astype(dtype)
    for k in range(1, n):
        previous, current = (
            current,
            ((2 * k + nu + 1 - points) * current - (k + nu) * previous)
            / (k + 1),
        )
    return current


def laguerre_function_table(
    count: int,
    nu: float,
    u: npt.ArrayLike,
) -> FloatArray:
    """Orthonormal Laguerre functions for degrees ``0 .. count-1``.

    The k-th row holds ``sqrt(k!/Gamma(k+nu+1)) u^(nu/2) e^(-u/2)
    L_k^nu(u)``. The recurrence runs on mantissas with a per-point log
    scale so that neither the prefactor nor the polynomial overflows.

    Args:
        count (int): Number of degrees
        nu (float): Parameter nu, positive
        u (ArrayLike): Non-negative evaluation points

    Returns:
        FloatArray: Table of shape ``(count, len(u))``; zero where u = 0
    """
    points = np.atleast_1d(np.asarray(u, dtype=np.float64))
    table = np.zeros((count, points.size))
    positive = points > 0
    if count == 0 or not positive.any():
        return table

    up = points[positive]
    log_scale = 0.5 * nu * np.log(up) - 0.5 * up - 0.5 * special.gammaln(
        nu + 1,
    )
    previous = np.zeros_like(up)
    current = np.ones_like(up)
    rows = np.empty((count, up.size))

    with np.errstate(divide='ignore', under='ignore'):
        rows[0] = np.exp(log_scale)
        for k in range(count - 1):
            following = (
                (2 * k + nu + 1 - up) * current
                - math.sqrt(k * (k + nu)) * previous
            ) / math.sqrt((k + 1) * (k + nu + 1))
            previous, current = current, following
            large = np.abs(current) > RESCALE
            if large.any():
                current[large] /= RESCALE
                previous[large] /= RESCALE
                log_scale[large] += math.log(RESCALE)
            rows[k + 1] = np.sign(current) * np.exp(
                np.log(np.abs(current)) + log_scale,
            )

    table[:, positive] = rows
    return table


def build_rule(
    kind: RuleKind,
    *,
    order: int = 0,
    exponent: float = 0.0,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_depth: int = 40,
) -> QuadratureRule:
    """Construct a quadrature rule.

    Args:
        kind (RuleKind): Quadrature family
        order (int): Number of nodes of a fixed rule
        exponent (float): Laguerre weight exponent nu
        abs_tol (float): Absolute tolerance (adaptive)
        rel_tol (float): Relative tolerance (adaptive)
        max_depth (int): Bisection depth (adaptive)

    Returns:
        QuadratureRule: The rule

    Raises:
        ParameterError: If order or exponent is out of range
        ConvergenceError: If the node solver returns inconsistent weights
    """
    if kind is RuleKind.ADAPTIVE:
        return QuadratureRule(
            kind=kind,
            abs_tol=abs_tol,
            rel_tol=rel_tol,
            max_depth=max_depth,
        )

    laguerre_kind = kind is RuleKind.GAUSS_LAGUERRE
    is_valid, error = validate_rule_request(
        order,
        exponent,
        laguerre=laguerre_kind,
    )
    if not is_valid:
        raise ParameterError(str(error))

    if laguerre_kind:
        nodes, weights = special.roots_genlaguerre(order, exponent)
        expected = math.exp(special.gammaln(exponent + 1))
    else:
        nodes, weights = special.roots_legendre(order)
        expected = 2.0

    total = float(np.sum(weights))
    if not math.isclose(total, expected, rel_tol=WEIGHT_SUM_RTOL):
        logger.warning(
            f'Node solver failed for {kind.value} order={order} '
            f'nu={exponent}: weight sum {total} != {expected}',
        )
        msg = (
            f'Node solving did not converge for {kind.value} '
            f'(order={order}, nu={exponent})'
        )
        raise ConvergenceError(
            msg,
            {'order': order, 'nu': exponent, 'weight_sum': total},
        )

    return QuadratureRule(
        kind=kind,
        nodes=np.asarray(nodes, dtype=np.float64),
        weights=np.asarray(weights, dtype=np.float64),
        order=order,
        exponent=exponent,
        abs_tol=abs_tol,
        rel_tol=rel_tol,
        max_depth=max_depth,
    )


def legendre_panels(
    edges: npt.ArrayLike,
    order: int,
) -> tuple[FloatArray, FloatArray]:
    """Composite Gauss-Legendre rule over consecutive panels.

    Args:
        edges (ArrayLike): Increasing panel edges
        order (int): Nodes per panel

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights
    """
    reference_nodes, reference_weights = special.roots_legendre(order)
    bounds = np.asarray(edges, dtype=np.float64)
    lower = bounds[:-1, None]
    upper = bounds[1:, None]
    half = 0.5 * (upper - lower)
    nodes = 0.5 * (lower + upper) + half * reference_nodes
    weights = half * reference_weights
    return nodes.ravel(), weights.ravel()


def graded_panels(
    upper: float,
    *,
    order: int = 16,
    uniform: int = 40,
    graded: int = 30,
    floor: float = 1e-12,
) -> tuple[FloatArray, FloatArray]:
    """Composite rule on ``[0, upper]`` refined geometrically towards 0.

    Integrands behaving like ``x^beta`` with ``beta > -1`` at the origin
    are handled by the geometric panels; the uniform panels resolve the
    oscillations further out.

    Args:
        upper (float): Right end of the interval
        order (int): Nodes per panel
        uniform (int): Number of uniform panels on ``[upper/20, upper]``
        graded (int): Number of geometric panels below ``upper/20``
        floor (float): Relative size of the smallest panel

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights
    """
    split = 0.05
    edges = np.concatenate(
        [
            [0.0],
            upper * np.geomspace(floor, split, graded),
            upper * np.linspace(split, 1.0, uniform + 1)[1:],
        ],
    )
    return legendre_panels(edges, order)


def square_substitution(f: Integrand, xi: float) -> Integrand:
    """Rewrite an x-integrand in the variable ``u = xi x^2``.

    Args:
        f (Integrand): Integrand in x
        xi (float): Scale of the substitution

    Returns:
        Integrand: ``g`` with ``int f dx = int g du``
    """

    def substituted(u: Any) -> Any:  # noqa: ANN401
        root = np.sqrt(u / xi)
        return f(root) / (2.0 * np.sqrt(xi * u))

    return substituted


def _tolerance_met(value: complex, error: float, rule: QuadratureRule) -> bool:
    return error <= max(rule.abs_tol, rule.rel_tol * abs(value))


def _fixed_sum(
    f: Integrand,
    lower: float,
    upper: float,
    rule: QuadratureRule,
) -> complex | float:
    if rule.kind is RuleKind.GAUSS_LAGUERRE:
        values = np.asarray(f(lower + rule.nodes))
        total: complex | float = np.sum(rule.weights * values).item()
        return total
    half = 0.5 * (upper - lower)
    points = lower + half * (rule.nodes + 1.0)
    values = np.asarray(f(points))
    scaled: complex | float = (half * np.sum(rule.weights * values)).item()
    return scaled


def _integrate_fixed(
    f: Integrand,
    lower: float,
    upper: float,
    rule: QuadratureRule,
) -> IntegrationResult:
    infinite = math.isinf(upper)
    if (rule.kind is RuleKind.GAUSS_LAGUERRE) != infinite:
        msg = (
            'Gauss-Laguerre rules need an infinite upper limit and '
            'Gauss-Legendre rules a finite one'
        )
        raise ParameterError(msg)

    value = _fixed_sum(f, lower, upper, rule)
    if rule.order > 1:
        coarse = build_rule(
            rule.kind,
            order=rule.order // 2,
            exponent=rule.exponent,
        )
        error = abs(value - _fixed_sum(f, lower, upper, coarse))
    else:
        error = abs(value)
    return IntegrationResult(
        value=value,
        error=float(error),
        converged=_tolerance_met(value, error, rule),
        evaluations=rule.order + rule.order // 2,
    )


def _quadpack(
    g: Callable[[float], float],
    lower: float,
    upper: float,
    rule: QuadratureRule,
) -> tuple[float, float, bool, int]:
    result = scipy_integrate.quad(
        g,
        lower,
        upper,
        epsabs=rule.abs_tol,
        epsrel=rule.rel_tol,
        limit=rule.max_depth * QUADPACK_PANELS_PER_LEVEL,
        full_output=1,
    )
    info: dict[str, Any] = result[2]
    return (
        float(result[0]),
        float(result[1]),
        len(result) == 3,  # noqa: PLR2004
        int(info['neval']),
    )


def _quadpack_split(
    g: Callable[[float], float],
    lower: float,
    upper: float,
    rule: QuadratureRule,
    scale: float,
) -> tuple[float, float, bool, int]:
    if not math.isinf(upper):
        return _quadpack(g, lower, upper, rule)

    cut = lower + scale

    def tail(t: float) -> float:
        gap = 1.0 - t
        return g(cut + t / gap) / (gap * gap)

    head = _quadpack(g, lower, cut, rule)
    rest = _quadpack(tail, 0.0, 1.0, rule)
    return (
        head[0] + rest[0],
        head[1] + rest[1],
        head[2] and rest[2],
        head[3] + rest[3],
    )


def _integrate_adaptive(
    f: Integrand,
    lower: float,
    upper: float,
    rule: QuadratureRule,
    scale: float,
) -> IntegrationResult:
    probe_at = lower + 0.5 * scale if math.isinf(upper) else (
        0.5 * (lower + upper)
    )
    complex_valued = bool(np.iscomplexobj(f(probe_at)))

    real = _quadpack_split(
        lambda x: float(np.real(f(x))),
        lower,
        upper,
        rule,
        scale,
    )
    if not complex_valued:
        value: complex | float = real[0]
        error, converged, evaluations = real[1], real[2], real[3]
    else:
        imag = _quadpack_split(
            lambda x: float(np.imag(f(x))),
            lower,
            upper,
            rule,
            scale,
        )
        value = complex(real[0], imag[0])
        error = math.hypot(real[1], imag[1])
        converged = real[2] and imag[2]
        evaluations = real[3] + imag[3]

    converged = converged and _tolerance_met(value, error, rule)
    if not converged:
        logger.warning(
            f'Adaptive quadrature on [{lower}, {upper}] missed tolerance: '
            f'value={value} error={error}',
        )
    return IntegrationResult(
        value=value,
        error=error,
        converged=converged,
        evaluations=evaluations,
    )


def integrate(
    f: Integrand,
    lower: float,
    upper: float,
    rule: QuadratureRule,
    *,
    scale: float = 1.0,
) -> IntegrationResult:
    """Integrate a real- or complex-valued function over an interval.

    Gauss-Laguerre rules compute ``int_a^inf f(x) (x-a)^nu e^-(x-a) dx``
    and Gauss-Legendre rules ``int_a^b f(x) dx``; both evaluate ``f`` on
    arrays. The adaptive rule evaluates ``f`` on scalars and maps an
    infinite upper limit through ``x = L + t/(1-t)`` with
    ``L = a + scale``.

    Args:
        f (Integrand): The integrand
        lower (float): Lower limit
        upper (float): Upper limit, possibly ``inf``
        rule (QuadratureRule): Rule to use
        scale (float): Decay scale placing the improper split point

    Returns:
        IntegrationResult: Value, error estimate and convergence flag

    Raises:
        ParameterError: If the limits do not suit the rule
        QuadratureError: If the integrand produced NaN
    """
    is_valid, error = validate_interval(lower, upper)
    if not is_valid:
        raise ParameterError(str(error))

    if rule.kind is RuleKind.ADAPTIVE:
        result = _integrate_adaptive(f, lower, upper, rule, scale)
    else:
        result = _integrate_fixed(f, lower, upper, rule)

    if not np.isfinite(result.value):
        logger.warning(f'NaN in integrand on [{lower}, {upper}]')
        msg = 'Integrand evaluation produced NaN'
        raise QuadratureError(msg, {'lower': lower, 'upper': upper})
    return result


def oscillator_table(
    count: int,
    nu: float,
    xi: float,
    x: npt.ArrayLike,
) -> FloatArray:
    """Radial oscillator eigenfunctions for levels ``0 .. count-1``.

    Row k is ``sqrt(2 xi x) l_k(xi x^2)`` with ``l_k`` the orthonormal
    Laguerre function of :func:`laguerre_function_table`.

    Args:
        count (int): Number of levels
        nu (float): Repulsion index, positive
        xi (float): Oscillator scale, positive
        x (ArrayLike): Non-negative evaluation points

    Returns:
        FloatArray: Table of shape ``(count, len(x))``
    """
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    table = laguerre_function_table(count, nu, xi * points * points)
    return np.sqrt(2.0 * xi * points) * table


def oscillator_derivative_table(
    table: FloatArray,
    nu: float,
    xi: float,
    x: npt.ArrayLike,
) -> FloatArray:
    """First derivatives of the rows of an :func:`oscillator_table`.

    Uses ``Phi_k' = Phi_k [(nu + 1/2 + 2k)/x - xi x]
    - (2/x) sqrt(k(k+nu)) Phi_(k-1)``; the derivative vanishes at 0.

    Args:
        table (FloatArray): Output of :func:`oscillator_table`
        nu (float): Repulsion index
        xi (float): Oscillator scale
        x (ArrayLike): The points the table was evaluated at

    Returns:
        FloatArray: Table of derivatives, same shape as ``table``
    """
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    derivative = np.zeros_like(table)
    inside = points > 0
    xs = points[inside]
    levels = np.arange(table.shape[0])[:, None]
    drift = (nu + 0.5 + 2.0 * levels) / xs - xi * xs
    derivative[:, inside] = table[:, inside] * drift
    coupling = 2.0 * np.sqrt(levels[1:] * (levels[1:] + nu)) / xs
    derivative[1:, inside] -= coupling * table[:-1, inside]
    return derivative
