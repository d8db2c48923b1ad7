"""Covariant integral quantization measured by phase-space quadrature.

The operator of a symbol ``f`` is

    A_f = int f(q, p) |q,p><q,p| dq dp / (2 pi c0)

with the coherent states generated by the chosen fiducial. Its matrix
on a few basis functions is measured with
:class:`~acs.coherent.PhaseSpaceIntegrator` and compared with the closed
forms

    A_(q^a) = (c_a / c0) x^a          A_p  = (c1 / c0) p
    A_(qp)  = (c2 / c0) d             A_(p^2) = (c2 / c0) p^2
                                              + (K - 3 c2 / 2) / c0 x^-2

whose target matrices are built by one-dimensional quadrature. The
distributional steps leading to those forms are not reproduced; only
their results are checked.
"""

import numpy as np
from loguru import logger
from scipy import linalg

from acs.coherent import PhaseSpaceIntegrator, PhaseSpaceResult
from acs.errors import ConvergenceError
from acs.fiducial import (
    FiducialSpec,
    GridFiducial,
    derivative_constants,
    make_spec,
    moment,
    rescale,
)
from acs.propagator import BasisSpec, OperatorMatrix, basis_operator
from acs.quantizer.models import (
    KineticFit,
    RatioReport,
    SymbolKind,
    SymbolSpec,
)
from acs.specfun import ComplexArray

Fiducial = FiducialSpec | GridFiducial

DEFAULT_BASIS = BasisSpec(3.0, 1.0, 8)
DEFAULT_TOL = 1e-6


def _c0(fiducial: Fiducial) -> float:
    return moment(fiducial, 0.0).require()


def _vectors(basis: BasisSpec) -> list[FiducialSpec]:
    return [make_spec(basis.nu, k, basis.xi_ref) for k in range(basis.size)]


def _measure(
    symbol: SymbolSpec,
    fiducial: Fiducial,
    basis: BasisSpec,
    tol: float,
) -> tuple[OperatorMatrix, PhaseSpaceResult]:
    integrator = PhaseSpaceIntegrator(
        fiducial,
        _vectors(basis),
        c0=_c0(fiducial),
        tol=tol,
    )
    result = integrator.integrate(symbol.q_power, symbol.p_power)
    if not result.converged:
        logger.warning(f'Quantization of {symbol.label} did not converge')
        msg = f'Phase-space integral of {symbol.label} missed its tolerance'
        raise ConvergenceError(msg, result.to_dict())
    return OperatorMatrix(result.matrix, basis, f'A[{symbol.label}]'), result


def quantize_elements(
    symbol: SymbolSpec,
    fiducial: Fiducial,
    basis: BasisSpec = DEFAULT_BASIS,
    tol: float = DEFAULT_TOL,
) -> OperatorMatrix:
    """Matrix ``<Phi_i|A_f|Phi_j>`` of a quantized symbol.

    Args:
        symbol (SymbolSpec): The classical observable
        fiducial (Fiducial): Fiducial vector generating the states
        basis (BasisSpec): Basis functions the matrix is taken on
        tol (float): Relative tolerance of the phase-space quadrature

    Returns:
        OperatorMatrix: The measured matrix

    Raises:
        DivergenceError: If c0 or the momentum integral diverges
        ConvergenceError: If the quadrature misses its tolerance
    """
    return _measure(symbol, fiducial, basis, tol)[0]


def target_matrix(symbol: SymbolSpec, basis: BasisSpec) -> OperatorMatrix:
    """The operator a symbol is expected to be proportional to.

    Args:
        symbol (SymbolSpec): A symbol other than ``p^2``
        basis (BasisSpec): The basis

    Returns:
        OperatorMatrix: ``x^alpha``, ``p`` or ``d``
    """
    if symbol.kind is SymbolKind.Q_POWER:
        return basis_operator(basis, 'x_power', symbol.alpha)
    if symbol.kind is SymbolKind.P_LINEAR:
        return basis_operator(basis, 'p')
    if symbol.kind is SymbolKind.D_SYMBOL:
        return basis_operator(basis, 'd')
    return basis_operator(basis, 'p2')


def predicted_ratio(symbol: SymbolSpec, fiducial: Fiducial) -> float:
    """Closed-form ratio of a quantized symbol to its target operator.

    Args:
        symbol (SymbolSpec): A symbol other than ``p^2``
        fiducial (Fiducial): The fiducial

    Returns:
        float: ``c_alpha/c0``, ``c1/c0`` or ``c2/c0``

    Raises:
        DivergenceError: Naming the moment that diverges
    """
    gamma = {
        SymbolKind.Q_POWER: symbol.alpha,
        SymbolKind.P_LINEAR: 1.0,
        SymbolKind.D_SYMBOL: 2.0,
        SymbolKind.P_SQUARED: 2.0,
    }[symbol.kind]
    return moment(fiducial, gamma).require() / _c0(fiducial)


def _ratio(
    measured: ComplexArray,
    target: ComplexArray,
) -> tuple[float, float]:
    overlap = np.vdot(target, measured).real
    ratio = float(overlap / np.vdot(target, target).real)
    residual = float(
        np.linalg.norm(measured - ratio * target) / np.linalg.norm(measured),
    )
    return ratio, residual


def _verify_ratio(
    symbol: SymbolSpec,
    fiducial: Fiducial,
    basis: BasisSpec,
    tol: float,
) -> RatioReport:
    predicted = predicted_ratio(symbol, fiducial)
    measured, result = _measure(symbol, fiducial, basis, tol)
    target = target_matrix(symbol, basis).matrix
    ratio, residual = _ratio(measured.matrix, target)
    report = RatioReport(
        symbol=symbol,
        measured=ratio,
        predicted=predicted,
        residual=residual,
        integration=result,
    )
    logger.info(
        f'{symbol.label}: ratio {ratio:.6g} against {predicted:.6g}, '
        f'residual {residual:.2e}',
    )
    return report


def verify_q_power(
    alpha: float,
    fiducial: Fiducial,
    basis: BasisSpec = DEFAULT_BASIS,
    tol: float = DEFAULT_TOL,
) -> RatioReport:
    """Check ``A_(q^alpha) = (c_alpha / c0) x^alpha``.

    Args:
        alpha (float): Exponent, within the finiteness window of c_alpha
        fiducial (Fiducial): The fiducial
        basis (BasisSpec): Basis functions the matrices are taken on
        tol (float): Relative tolerance of the phase-space quadrature

    Returns:
        RatioReport: Measured against predicted ratio
    """
    return _verify_ratio(
        SymbolSpec(SymbolKind.Q_POWER, alpha),
        fiducial,
        basis,
        tol,
    )


def verify_p(
    fiducial: Fiducial,
    basis: BasisSpec = DEFAULT_BASIS,
    tol: float = DEFAULT_TOL,
) -> RatioReport:
    """Check ``A_p = (c1 / c0) p``.

    In the real basis the measured matrix is purely imaginary.

    Args:
        fiducial (Fiducial): The fiducial
        basis (BasisSpec): Basis functions the matrices are taken on
        tol (float): Relative tolerance of the phase-space quadrature

    Returns:
        RatioReport: Measured against predicted ratio
    """
    return _verify_ratio(
        SymbolSpec(SymbolKind.P_LINEAR),
        fiducial,
        basis,
        tol,
    )


def verify_d(
    fiducial: Fiducial,
    basis: BasisSpec = DEFAULT_BASIS,
    tol: float = DEFAULT_TOL,
) -> RatioReport:
    """Check ``A_(qp) = (c2 / c0) d``, the dilation generator.

    Args:
        fiducial (Fiducial): The fiducial
        basis (BasisSpec): Basis functions the matrices are taken on
        tol (float): Relative tolerance of the phase-space quadrature

    Returns:
        RatioReport: Measured against predicted ratio
    """
    return _verify_ratio(
        SymbolSpec(SymbolKind.D_SYMBOL),
        fiducial,
        basis,
        tol,
    )


def verify_p2(
    fiducial: Fiducial,
    basis: BasisSpec = DEFAULT_BASIS,
    tol: float = DEFAULT_TOL,
) -> KineticFit:
    """Fit the quantized ``p^2`` to ``a p^2 + b x^-2``.

    Args:
        fiducial (Fiducial): A fiducial with finite K
        basis (BasisSpec): Basis functions the matrices are taken on
        tol (float): Relative tolerance of the phase-space quadrature

    Returns:
        KineticFit: Fitted against predicted coefficients

    Raises:
        DivergenceError: If K or c2 diverges
    """
    c0 = _c0(fiducial)
    c2 = moment(fiducial, 2.0).require()
    k = derivative_constants(fiducial).repulsive.require()
    symbol = SymbolSpec(SymbolKind.P_SQUARED)
    measured, result = _measure(symbol, fiducial, basis, tol)

    columns = [
        basis_operator(basis, 'p2').matrix.ravel(),
        basis_operator(basis, 'x_power', -2.0).matrix.ravel(),
    ]
    design = np.stack([column.real for column in columns], axis=1)
    values = measured.matrix.ravel().real
    solution, _, _, _ = linalg.lstsq(design, values)
    fitted = design @ solution
    residual = float(np.linalg.norm(values - fitted) / np.linalg.norm(values))
    fit = KineticFit(
        kinetic=float(solution[0]),
        repulsive=float(solution[1]),
        predicted_kinetic=c2 / c0,
        predicted_repulsive=(k - 1.5 * c2) / c0,
        residual=residual,
        integration=result,
    )
    if fit.repulsive <= 0:
        logger.warning(f'Non-positive repulsive coefficient {fit.repulsive}')
    logger.info(
        f'p^2: kinetic {fit.kinetic:.6g} against {fit.predicted_kinetic:.6g}, '
        f'repulsive {fit.repulsive:.6g} against '
        f'{fit.predicted_repulsive:.6g}',
    )
    return fit


def unit_ratio_fiducial(fiducial: GridFiducial) -> GridFiducial:
    """Dilate a fiducial so that ``c1 = c0``.

    Since ``c_gamma`` scales as ``lambda^(-gamma-2)``, the dilation
    ``lambda = c1 / c0`` makes the quantized ``p`` exactly ``p``.

    Args:
        fiducial (GridFiducial): The fiducial

    Returns:
        GridFiducial: The dilated fiducial
    """
    factor = moment(fiducial, 1.0).require() / _c0(fiducial)
    logger.debug(f'Dilating the fiducial by {factor}')
    return rescale(fiducial, factor)
