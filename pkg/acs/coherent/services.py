"""Coherent states ``|q,p;nu,n>``: wavefunctions, overlaps and densities.

The wavefunction is ``e^(-i theta) q^(-1/2) Phi_n(x/q) e^(i p x^2 / 2q)``
with ``theta = (2n + nu + 1) arctan(qp/xi)``, the principal-branch form
of ``((xi - iqp)/(xi + iqp))^((2n+nu+1)/2)``. Overlaps are Gaussian
integrals times Laguerre polynomials; after rotating the contour onto
``u = A x^2`` they are exact under a generalized Gauss-Laguerre rule.
"""

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
import numpy.typing as npt
from loguru import logger

from acs.coherent.models import (
    CSParams,
    CSSuperposition,
    Expectations,
    IdentityReport,
)
from acs.coherent.phase_space import PhaseSpaceIntegrator
from acs.coherent.validators import validate_pair
from acs.errors import ConvergenceError, ParameterError
from acs.fiducial import (
    FiducialSpec,
    Moment,
    RadialState,
    c0_level,
    c_gamma,
    derivative_constants,
    phi_derivatives,
    xi_star,
)
from acs.specfun import (
    ComplexArray,
    FloatArray,
    RuleKind,
    build_rule,
    graded_panels,
    integrate,
    laguerre,
    log_gamma,
)

OverlapMethod = Literal['laguerre', 'adaptive']
State = CSParams | CSSuperposition

EXTRA_LAGUERRE_ORDER = 5
IDENTITY_VECTORS = 4


def phase_factor(params: CSParams) -> complex:
    """The unit-modulus factor ``((xi - iqp)/(xi + iqp))^((2n+nu+1)/2)``.

    Args:
        params (CSParams): The label

    Returns:
        complex: Principal-branch power
    """
    qp = params.q * params.p
    base = complex(params.xi, -qp) / complex(params.xi, qp)
    return complex(base ** (params.level_factor / 2.0))


def wavefunction(params: CSParams, x: npt.ArrayLike) -> ComplexArray:
    """Evaluate ``<x|q,p;nu,n>``.

    Args:
        params (CSParams): The label
        x (ArrayLike): Non-negative points

    Returns:
        ComplexArray: The wavefunction, zero at the origin
    """
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    q, p = params.q, params.p
    chirp = np.exp(
        1j * (p * points * points / (2.0 * q) - params.phase_angle),
    )
    return chirp * params.fiducial(points / q) / math.sqrt(q)


def wavefunction_n0(params: CSParams, x: npt.ArrayLike) -> ComplexArray:
    """Ground-level wavefunction from its explicit Gaussian form.

    Args:
        params (CSParams): A label with ``n = 0``
        x (ArrayLike): Non-negative points

    Returns:
        ComplexArray: The wavefunction

    Raises:
        ParameterError: If ``n != 0``
    """
    if params.n != 0:
        msg = f'The explicit form needs n = 0, got n = {params.n}'
        raise ParameterError(msg)
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    nu, xi, q = params.nu, params.xi, params.q
    result = np.zeros(points.shape, dtype=np.complex128)
    inside = points > 0
    xs = points[inside]
    log_modulus = (
        0.5 * math.log(2.0)
        - 0.5 * log_gamma(nu + 1)
        + 0.5 * (nu + 1) * math.log(xi)
        + (nu + 0.5) * np.log(xs)
        - (nu + 1) * math.log(q)
    )
    exponent = -complex(xi, -q * params.p) * xs * xs / (2.0 * q * q)
    result[inside] = phase_factor(params) * np.exp(log_modulus + exponent)
    return result


def wavefunction_derivative(
    params: CSParams,
    x: npt.ArrayLike,
) -> ComplexArray:
    """First derivative of ``<x|q,p;nu,n>``.

    Args:
        params (CSParams): The label
        x (ArrayLike): Positive points

    Returns:
        ComplexArray: d/dx of the wavefunction
    """
    points = np.atleast_1d(np.asarray(x, dtype=np.float64))
    q, p = params.q, params.p
    value, slope, _ = phi_derivatives(params.fiducial, points / q)
    chirp = np.exp(
        1j * (p * points * points / (2.0 * q) - params.phase_angle),
    )
    return chirp * (slope / q + 1j * p * points / q * value) / math.sqrt(q)


def state_wavefunction(state: State, x: npt.ArrayLike) -> ComplexArray:
    """Wavefunction of a coherent state or of a superposition.

    Args:
        state (State): The state
        x (ArrayLike): Non-negative points

    Returns:
        ComplexArray: The wavefunction
    """
    if isinstance(state, CSParams):
        return wavefunction(state, x)
    table = np.stack([wavefunction(item, x) for item in state.states])
    return np.asarray(state.amplitudes @ table, dtype=np.complex128)


def state_support(state: State) -> float:
    """Point beyond which the state is negligible.

    Args:
        state (State): The state

    Returns:
        float: Radial cutoff
    """
    components = (state,) if isinstance(state, CSParams) else state.states
    return max(item.q * item.fiducial.support for item in components)


def state_rule(params: CSParams) -> tuple[FloatArray, FloatArray]:
    """Composite rule resolving the envelope and the chirp of a state.

    Args:
        params (CSParams): The label

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights
    """
    upper = params.q * params.fiducial.support
    chirp = abs(params.p) * upper * upper / (2.0 * params.q)
    return graded_panels(upper, uniform=40 + math.ceil(chirp / math.pi))


def expectation_x_power(params: CSParams, alpha: float) -> Moment:
    """``<x^alpha> = c_(-alpha-2) q^alpha``.

    Args:
        params (CSParams): The label
        alpha (float): Power, finite for ``alpha > -2 nu - 2``

    Returns:
        Moment: The expectation, divergent outside the window
    """
    base = c_gamma(params.fiducial, -alpha - 2.0)
    label = f'<x^{alpha:g}>'
    if base.value is None:
        return Moment(label, None)
    return Moment(label, base.value * params.q**alpha)


def expectation_p(params: CSParams) -> float:
    """``<p> = c_-3 p``, equal to p at the scaled point.

    Args:
        params (CSParams): The label

    Returns:
        float: The expectation
    """
    return c_gamma(params.fiducial, -3.0).require() * params.p


def expectation_d(params: CSParams) -> float:
    """``<d> = c_-4 q p`` for the dilation generator.

    Args:
        params (CSParams): The label

    Returns:
        float: The expectation
    """
    return c_gamma(params.fiducial, -4.0).require() * params.q * params.p


def expectation_p2(params: CSParams) -> float:
    """``<p^2> = c_-4 p^2 + C / q^2``.

    Args:
        params (CSParams): The label

    Returns:
        float: The expectation
    """
    kinetic = derivative_constants(params.fiducial).kinetic
    c_minus_four = c_gamma(params.fiducial, -4.0).require()
    return c_minus_four * params.p**2 + kinetic / params.q**2


def expectation_h(params: CSParams) -> float:
    """``<H_nu> = [(2n + nu + 1)/xi] (p^2 + xi^2/q^2)``.

    Args:
        params (CSParams): The label

    Returns:
        float: The energy expectation
    """
    h_sc = params.p**2 + (params.xi / params.q) ** 2
    return params.level_factor / params.xi * h_sc


def expectations(params: CSParams) -> Expectations:
    """All closed-form expectation values.

    Args:
        params (CSParams): The label

    Returns:
        Expectations: ``<x>``, ``<p>``, ``<d>``, ``<p^2>`` and ``<H>``
    """
    return Expectations(
        x=expectation_x_power(params, 1.0).require(),
        p=expectation_p(params),
        d=expectation_d(params),
        p2=expectation_p2(params),
        h=expectation_h(params),
    )


def quadrature_expectations(params: CSParams) -> Expectations:
    """Expectation values by quadrature of the wavefunction.

    Args:
        params (CSParams): The label

    Returns:
        Expectations: Measured values
    """
    nodes, weights = state_rule(params)
    value = wavefunction(params, nodes)
    slope = wavefunction_derivative(params, nodes)
    density = weights * np.abs(value) ** 2
    momentum = np.conj(value) * (-1j) * slope
    dilation = np.conj(value) * (-1j) * (nodes * slope + 0.5 * value)
    kinetic = float(np.sum(weights * np.abs(slope) ** 2))
    repulsion = params.nu**2 - 0.25
    return Expectations(
        x=float(np.sum(density * nodes)),
        p=float(np.sum(weights * momentum).real),
        d=float(np.sum(weights * dilation).real),
        p2=kinetic,
        h=kinetic + repulsion * float(np.sum(density / nodes**2)),
    )


def _log_norm(nu: float, n: npt.ArrayLike, xi: npt.ArrayLike) -> FloatArray:
    levels = np.asarray(n, dtype=np.float64)
    scales = np.asarray(xi, dtype=np.float64)
    log_ratio = np.vectorize(
        lambda k: math.lgamma(k + 1) - log_gamma(nu + k + 1),
    )(levels)
    return 0.5 * (math.log(2.0) + log_ratio) + 0.5 * (nu + 1) * np.log(scales)


def gaussian_overlap(
    nu: float,
    bra: tuple[npt.ArrayLike, npt.ArrayLike, float, int],
    ket: tuple[npt.ArrayLike, npt.ArrayLike, float, int],
) -> ComplexArray:
    """Overlap of generalized states by contour-rotated Gauss-Laguerre.

    Each side is ``(q, p, xi, n)`` describing
    ``q^(-1/2) Phi_n(x/q; xi) e^(i p x^2/2q)`` without its label phase;
    the position and momentum entries broadcast against each other.

    Args:
        nu (float): Common repulsion index
        bra (tuple): Bra parameters
        ket (tuple): Ket parameters

    Returns:
        ComplexArray: Overlaps with the broadcast shape
    """
    q_a, p_a, xi_a, n_a = bra
    q_b, p_b, xi_b, n_b = ket
    qa = np.asarray(q_a, dtype=np.float64)
    pa = np.asarray(p_a, dtype=np.float64)
    qb = np.asarray(q_b, dtype=np.float64)
    pb = np.asarray(p_b, dtype=np.float64)

    width = (xi_a + 1j * qa * pa) / (2.0 * qa * qa) + (
        xi_b - 1j * qb * pb
    ) / (2.0 * qb * qb)
    rule = build_rule(
        RuleKind.GAUSS_LAGUERRE,
        order=(n_a + n_b) // 2 + EXTRA_LAGUERRE_ORDER,
        exponent=nu,
    )
    shape = np.broadcast_shapes(width.shape, qa.shape, qb.shape)
    nodes = rule.nodes.reshape((-1,) + (1,) * len(shape))
    weights = rule.weights.reshape(nodes.shape)
    bra_arg = xi_a * nodes / (width * qa * qa)
    ket_arg = xi_b * nodes / (width * qb * qb)
    polynomial_sum = np.sum(
        weights * laguerre(n_a, nu, bra_arg) * laguerre(n_b, nu, ket_arg),
        axis=0,
    )
    log_norms = float(_log_norm(nu, n_a, xi_a) + _log_norm(nu, n_b, xi_b))
    prefactor = np.exp(log_norms - (nu + 1) * np.log(qa * qb))
    return prefactor * 0.5 * np.power(width, -(nu + 1)) * polynomial_sum


def _label_overlap(
    bra: CSParams,
    ket_q: npt.ArrayLike,
    ket_p: npt.ArrayLike,
    ket: CSParams,
) -> ComplexArray:
    q = np.asarray(ket_q, dtype=np.float64)
    p = np.asarray(ket_p, dtype=np.float64)
    theta_ket = ket.level_factor * np.arctan(q * p / ket.xi)
    raw = gaussian_overlap(
        bra.nu,
        (bra.q, bra.p, bra.xi, bra.n),
        (q, p, ket.xi, ket.n),
    )
    return np.exp(1j * (bra.phase_angle - theta_ket)) * raw


def _adaptive_overlap(a: CSParams, b: CSParams) -> complex:
    upper = max(state_support(a), state_support(b))
    rule = build_rule(RuleKind.ADAPTIVE)
    result = integrate(
        lambda x: complex(
            (np.conj(wavefunction(a, x)) * wavefunction(b, x))[0],
        ),
        0.0,
        upper,
        rule,
    )
    if not result.converged:
        msg = 'Adaptive overlap quadrature missed its tolerance'
        raise ConvergenceError(
            msg,
            {'error': result.error, 'a': a.to_dict(), 'b': b.to_dict()},
        )
    return complex(result.value)


def overlap(
    a: CSParams,
    b: CSParams,
    method: OverlapMethod = 'laguerre',
) -> complex:
    """Inner product ``<a|b>`` of two coherent states of one family.

    Args:
        a (CSParams): Bra
        b (CSParams): Ket
        method (OverlapMethod): Contour-rotated Gauss-Laguerre, or
            real-axis adaptive quadrature as a cross-check

    Returns:
        complex: The overlap

    Raises:
        ParameterError: If the two states have different nu
        ConvergenceError: If the adaptive quadrature misses tolerance
    """
    is_valid, error = validate_pair(a.nu, b.nu)
    if not is_valid:
        raise ParameterError(str(error))
    if a == b:
        return 1.0 + 0.0j
    if method == 'adaptive':
        return _adaptive_overlap(a, b)
    return complex(_label_overlap(a, b.q, b.p, b).item())


def overlap_modulus_squared_n0(a: CSParams, b: CSParams) -> float:
    """Closed form of ``|<a|b>|^2`` for two ground-level states.

    Args:
        a (CSParams): Bra with ``n = 0``
        b (CSParams): Ket with ``n = 0``

    Returns:
        float: ``(2 xi)^(2nu+2) / [xi^2 (q'/q + q/q')^2
        + (q p' - q' p)^2]^(nu+1)``
    """
    if a.n != 0 or b.n != 0:
        msg = 'The closed form holds for n = 0 only'
        raise ParameterError(msg)
    is_valid, error = validate_pair(a.nu, b.nu)
    if not is_valid:
        raise ParameterError(str(error))
    xi, nu = a.xi, a.nu
    ratio = b.q / a.q + a.q / b.q
    shear = a.q * b.p - b.q * a.p
    log_value = (2 * nu + 2) * math.log(2 * xi) - (nu + 1) * math.log(
        (xi * ratio) ** 2 + shear**2,
    )
    return math.exp(log_value)


def superpose(
    states: Sequence[CSParams],
    amplitudes: Sequence[complex],
) -> CSSuperposition:
    """Normalized superposition ``sum_k a_k |q_k,p_k>``.

    Args:
        states (Sequence[CSParams]): Components of one family
        amplitudes (Sequence[complex]): Unnormalized coefficients

    Returns:
        CSSuperposition: The normalized state
    """
    raw = CSSuperposition(tuple(states), np.asarray(amplitudes))
    gram = np.array(
        [[overlap(bra, ket) for ket in raw.states] for bra in raw.states],
    )
    coefficients = raw.amplitudes
    norm_squared = float(np.real(np.conj(coefficients) @ gram @ coefficients))
    if not norm_squared > 0:
        msg = 'Superposition has vanishing norm'
        raise ParameterError(msg)
    return CSSuperposition(raw.states, coefficients / math.sqrt(norm_squared))


def overlap_grid(
    analysis: CSParams,
    q_values: npt.ArrayLike,
    p_values: npt.ArrayLike,
    state: State,
) -> ComplexArray:
    """``<q,p;nu,n_a|state>`` over a grid of analysis labels.

    Args:
        analysis (CSParams): Template of the analysis family; only its
            ``nu`` and ``n`` are used
        q_values (ArrayLike): Position labels, first axis
        p_values (ArrayLike): Momentum labels, second axis
        state (State): Analysed state

    Returns:
        ComplexArray: Overlaps of shape ``(len(q), len(p))``
    """
    q_grid, p_grid = np.meshgrid(
        np.asarray(q_values, dtype=np.float64),
        np.asarray(p_values, dtype=np.float64),
        indexing='ij',
    )
    components = (
        ((state, 1.0 + 0.0j),)
        if isinstance(state, CSParams)
        else tuple(zip(state.states, state.amplitudes, strict=True))
    )
    theta = analysis.level_factor * np.arctan(q_grid * p_grid / analysis.xi)
    total = np.zeros(q_grid.shape, dtype=np.complex128)
    for component, amplitude in components:
        is_valid, error = validate_pair(analysis.nu, component.nu)
        if not is_valid:
            raise ParameterError(str(error))
        raw = gaussian_overlap(
            analysis.nu,
            (q_grid, p_grid, analysis.xi, analysis.n),
            (component.q, component.p, component.xi, component.n),
        )
        total += amplitude * np.exp(-1j * component.phase_angle) * raw
    return np.exp(1j * theta) * total


def husimi_density(
    state: State,
    q_values: npt.ArrayLike,
    p_values: npt.ArrayLike,
) -> FloatArray:
    """Semi-classical density ``|<q,p;nu,0|state>|^2 / (2 pi c0(nu,0))``.

    Args:
        state (State): Analysed state
        q_values (ArrayLike): Position labels, first axis
        p_values (ArrayLike): Momentum labels, second axis

    Returns:
        FloatArray: Density of shape ``(len(q), len(p))``
    """
    nu = state.nu
    analysis = CSParams(1.0, 0.0, nu, 0)
    amplitudes = overlap_grid(analysis, q_values, p_values, state)
    return np.abs(amplitudes) ** 2 / (2.0 * math.pi * c0_level(nu, 0))


def default_test_vectors(
    nu: float,
    n: int,
    count: int = IDENTITY_VECTORS,
) -> tuple[FiducialSpec, ...]:
    """Orthonormal test vectors ``Phi_k(xi_star(nu, n))``, k < count.

    Args:
        nu (float): Repulsion index
        n (int): Level fixing the scale
        count (int): Number of vectors

    Returns:
        tuple[FiducialSpec, ...]: The vectors
    """
    xi = xi_star(nu, n)
    return tuple(FiducialSpec(nu, k, xi) for k in range(count))


def identity_check(
    nu: float,
    n: int,
    vectors: Sequence[RadialState] | None = None,
    *,
    tol: float = 1e-6,
    threshold: float = 1e-3,
) -> IdentityReport:
    """Integrate the Gram matrix of test vectors against the CS frame.

    Computes ``int dq dp / (2 pi c0) <phi_i|q,p><q,p|phi_j>`` and
    compares it with ``delta_ij``. Violations are reported, not raised.

    Args:
        nu (float): Repulsion index
        n (int): Fiducial level
        vectors (Sequence[RadialState] | None): Normalized real test
            vectors, four oscillator levels by default
        tol (float): Tolerance of the phase-space integration
        threshold (float): Largest accepted residual

    Returns:
        IdentityReport: Residual matrix and error budget
    """
    spec = FiducialSpec(nu, n, xi_star(nu, n))
    tests = tuple(vectors) if vectors is not None else default_test_vectors(
        nu,
        n,
    )
    integrator = PhaseSpaceIntegrator(
        spec,
        tests,
        c0=c0_level(nu, n),
        tol=tol,
    )
    result = integrator.integrate(0.0, 0)
    residuals = np.abs(result.matrix - np.eye(len(tests)))
    report = IdentityReport(
        gram=result.matrix,
        residuals=residuals,
        threshold=threshold,
        integration=result,
    )
    if not report.passed:
        logger.warning(
            f'Resolution of identity residual {report.max_residual} '
            f'above {threshold}',
        )
    return report
