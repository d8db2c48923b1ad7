"""Spectral Galerkin solution of ``i d/dt psi = H_nu psi``.

States are expanded in the radial oscillator eigenfunctions
``Phi_k(x; nu, xi_ref)``. Since ``H_nu = H_0 - xi_ref^2 x^2`` and ``H_0``
is diagonal in that basis with ``x^2`` tridiagonal, the repulsive
``1/x^2`` term is represented exactly and the only error is truncation.
Propagation uses the dense eigendecomposition of the truncated matrix,
computed once per basis.
"""

import math
from collections.abc import Callable, Sequence
from typing import Literal

import numpy as np
import numpy.typing as npt
from loguru import logger

from acs.coherent import (
    CSParams,
    CSSuperposition,
    State,
    overlap,
    state_support,
    state_wavefunction,
)
from acs.dynamics import PhasePoint, evolve_cs, flow, trajectory
from acs.errors import ConvergenceError, ParameterError
from acs.propagator.models import (
    BasisSpec,
    EhrenfestReport,
    FidelityReport,
    FidelityRow,
    LiouvilleReport,
    OperatorMatrix,
    StateVector,
)
from acs.specfun import (
    ComplexArray,
    FloatArray,
    graded_panels,
    oscillator_derivative_table,
    oscillator_table,
)

Wavefunction = Callable[[FloatArray], ComplexArray]
OperatorKind = Literal['x_power', 'p', 'd', 'p2']

X2_TOLERANCE = 1e-8
DEFICIT_THRESHOLD = 1e-8
STABILITY_THRESHOLD = 1e-6
EHRENFEST_STEP = 1e-4


def basis_grid(
    basis: BasisSpec,
    extent: float = 0.0,
    chirp: float = 0.0,
) -> tuple[FloatArray, FloatArray]:
    """Composite rule resolving the basis and, optionally, a state.

    Args:
        basis (BasisSpec): The basis
        extent (float): Support of the state to resolve as well
        chirp (float): Largest phase ``p x^2 / 2q`` of that state

    Returns:
        tuple[FloatArray, FloatArray]: Nodes and weights
    """
    upper = max(basis.extent, extent)
    panels = 40 + basis.size + math.ceil(chirp / math.pi)
    return graded_panels(upper, uniform=panels)


def basis_table(basis: BasisSpec, nodes: FloatArray) -> FloatArray:
    """Basis functions at the nodes, shape ``(size, len(nodes))``.

    Args:
        basis (BasisSpec): The basis
        nodes (FloatArray): Evaluation points

    Returns:
        FloatArray: Table of ``Phi_k(x)``
    """
    return oscillator_table(basis.size, basis.nu, basis.xi_ref, nodes)


def x2_matrix(basis: BasisSpec, *, verify: bool = True) -> OperatorMatrix:
    """Tridiagonal matrix of ``x^2``.

    The diagonal is ``(2k + nu + 1)/xi_ref`` and the off-diagonal
    ``-sqrt((k+1)(k+nu+1))/xi_ref``.

    Args:
        basis (BasisSpec): The basis
        verify (bool): Compare every entry with quadrature

    Returns:
        OperatorMatrix: The matrix

    Raises:
        ConvergenceError: If quadrature disagrees by more than 1e-8
    """
    k = np.arange(basis.size - 1)
    off = -np.sqrt((k + 1) * (k + basis.nu + 1)) / basis.xi_ref
    closed = np.diag(basis.levels / basis.xi_ref)
    closed += np.diag(off, 1) + np.diag(off, -1)
    if verify:
        nodes, weights = basis_grid(basis)
        table = basis_table(basis, nodes)
        measured = (table * (weights * nodes * nodes)) @ table.T
        scale = max(1.0, float(np.max(np.abs(closed))))
        mismatch = float(np.max(np.abs(measured - closed))) / scale
        if mismatch > X2_TOLERANCE:
            logger.warning(
                f'x^2 matrix disagrees with quadrature by {mismatch} '
                f'for {basis.to_dict()}',
            )
            msg = 'x^2 matrix failed its quadrature check'
            raise ConvergenceError(
                msg,
                {'mismatch': mismatch, 'basis': basis.to_dict()},
            )
    return OperatorMatrix(closed, basis, 'x^2')


def hnu_matrix(basis: BasisSpec) -> OperatorMatrix:
    """Matrix of ``H_nu = p^2 + (nu^2 - 1/4)/x^2``.

    Args:
        basis (BasisSpec): The basis

    Returns:
        OperatorMatrix: ``diag(omega_k) - xi_ref^2 X2``
    """
    x2 = x2_matrix(basis).matrix
    omegas = 2.0 * basis.xi_ref * basis.levels
    return OperatorMatrix(
        np.diag(omegas) - basis.xi_ref**2 * x2,
        basis,
        'H_nu',
    )


def basis_operator(
    basis: BasisSpec,
    kind: OperatorKind,
    alpha: float = 1.0,
) -> OperatorMatrix:
    """Matrix of ``x^alpha``, ``p``, ``d`` or ``p^2`` by quadrature.

    Args:
        basis (BasisSpec): The basis
        kind (OperatorKind): Which operator
        alpha (float): Power of ``x`` for ``'x_power'``

    Returns:
        OperatorMatrix: The Hermitian part of the quadrature matrix

    Raises:
        ParameterError: If the kind is unknown
    """
    nodes, weights = basis_grid(basis)
    table = basis_table(basis, nodes)
    if kind == 'x_power':
        matrix = (table * (weights * nodes**alpha)) @ table.T + 0j
        label = f'x^{alpha:g}'
    elif kind == 'p2':
        slopes = oscillator_derivative_table(
            table,
            basis.nu,
            basis.xi_ref,
            nodes,
        )
        matrix = (slopes * weights) @ slopes.T + 0j
        label = 'p^2'
    elif kind in {'p', 'd'}:
        slopes = oscillator_derivative_table(
            table,
            basis.nu,
            basis.xi_ref,
            nodes,
        )
        if kind == 'p':
            matrix = -1j * (table * weights) @ slopes.T
        else:
            matrix = -1j * (table * weights) @ (
                slopes * nodes + 0.5 * table
            ).T
        label = kind
    else:
        msg = f'Unknown operator kind {kind!r}'
        raise ParameterError(msg)
    return OperatorMatrix(0.5 * (matrix + matrix.conj().T), basis, label)


def _state_grid(
    state: State,
    basis: BasisSpec,
) -> tuple[FloatArray, FloatArray]:
    components = (state,) if isinstance(state, CSParams) else state.states
    extent = state_support(state)
    chirp = max(
        abs(item.p) * item.q * item.fiducial.support**2 / 2.0
        for item in components
    )
    return basis_grid(basis, extent, chirp)


def project(
    state: State | Wavefunction,
    basis: BasisSpec,
    deficit_threshold: float = DEFICIT_THRESHOLD,
) -> StateVector:
    """Expansion coefficients ``c_k = <Phi_k|psi>`` by quadrature.

    Args:
        state (State | Wavefunction): Coherent state, superposition, or a
            wavefunction negligible beyond the basis extent
        basis (BasisSpec): The basis
        deficit_threshold (float): Deficit above which a warning is logged

    Returns:
        StateVector: Coefficients with the weight left outside the span
    """
    if isinstance(state, (CSParams, CSSuperposition)):
        nodes, weights = _state_grid(state, basis)
        values = state_wavefunction(state, nodes)
    else:
        nodes, weights = basis_grid(basis)
        values = np.asarray(state(nodes), dtype=np.complex128)
    table = basis_table(basis, nodes)
    coefficients = table @ (weights * values)
    total = float(np.sum(weights * np.abs(values) ** 2))
    deficit = max(total - float(np.vdot(coefficients, coefficients).real), 0.0)
    if deficit > deficit_threshold:
        logger.warning(
            f'Truncation deficit {deficit:.3e} above {deficit_threshold} '
            f'in {basis.to_dict()}',
        )
    return StateVector(coefficients, basis, deficit)


def propagate(
    hamiltonian: OperatorMatrix,
    state: StateVector,
    t: float,
) -> StateVector:
    """Apply ``exp(-i H t)`` through the eigendecomposition of H.

    Args:
        hamiltonian (OperatorMatrix): Hermitian generator
        state (StateVector): Initial coefficients
        t (float): Time

    Returns:
        StateVector: Propagated coefficients, same deficit
    """
    if t == 0:
        return state
    if state.basis != hamiltonian.basis:
        msg = 'State and Hamiltonian live in different bases'
        raise ParameterError(msg)
    values, vectors = hamiltonian.eigensystem
    spectral = vectors.conj().T @ state.coefficients
    evolved = vectors @ (np.exp(-1j * values * t) * spectral)
    return StateVector(evolved, state.basis, state.deficit)


def reference_scale(
    point: PhasePoint,
    times: Sequence[float],
    nu: float,
    n: int,
) -> float:
    """Basis scale ``sqrt(H_sc) / q_max`` over a propagation window.

    At rest this is the scale of the state itself, ``xi / q^2``.

    Args:
        point (PhasePoint): Initial label
        times (Sequence[float]): Times of interest
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        float: xi_ref
    """
    path = trajectory(point, [0.0, *times], nu, n)
    return math.sqrt(path.energy) / float(np.max(path.q))


def _fidelities(
    params: CSParams,
    times: Sequence[float],
    basis: BasisSpec,
    deficit_threshold: float,
) -> list[tuple[complex, float, float]]:
    hamiltonian = hnu_matrix(basis)
    start = project(params, basis, deficit_threshold)
    start_energy = hamiltonian.expectation(start)
    results = []
    for t in times:
        if t == 0:
            results.append((1.0 + 0.0j, start.deficit, 0.0))
            continue
        target = project(evolve_cs(params, t), basis, deficit_threshold)
        moved = propagate(hamiltonian, start, t)
        fidelity = target.inner(moved) / (target.norm * moved.norm)
        drift = abs(hamiltonian.expectation(moved) - start_energy)
        results.append(
            (fidelity, max(start.deficit, target.deficit), drift),
        )
    return results


def fidelity_report(
    nu: float,
    n: int,
    point: PhasePoint,
    times: Sequence[float],
    size: int,
    *,
    xi_ref: float | None = None,
    deficit_threshold: float = DEFICIT_THRESHOLD,
    stability_threshold: float = STABILITY_THRESHOLD,
) -> FidelityReport:
    """Check ``exp(-i H t)|q,p> = |Q_t,P_t>`` including the phase.

    ``F(t)`` is normalized by the norms of both truncated vectors; the
    deficit is reported separately, and the run is repeated with twice
    the truncation to measure stability.

    Args:
        nu (float): Repulsion index
        n (int): Fiducial level
        point (PhasePoint): Initial label
        times (Sequence[float]): Times to check
        size (int): Truncation N
        xi_ref (float | None): Basis scale, from the window by default
        deficit_threshold (float): Largest accepted truncation deficit
        stability_threshold (float): Largest accepted N-vs-2N change

    Returns:
        FidelityReport: One row per time
    """
    params = CSParams(point.q, point.p, nu, n)
    scale = xi_ref or reference_scale(point, times, nu, n)
    basis = BasisSpec(nu, scale, size)
    coarse = _fidelities(params, times, basis, deficit_threshold)
    fine = _fidelities(params, times, basis.doubled(), deficit_threshold)

    rows = []
    for t, (value, deficit, drift), (reference, _, _) in zip(
        times,
        coarse,
        fine,
        strict=True,
    ):
        moved = flow(point, t, nu, n)
        rows.append(
            FidelityRow(
                t=float(t),
                fidelity=complex(value),
                deficit=deficit,
                delta=abs(value - reference),
                energy_drift=drift,
                q=moved.q,
                p=moved.p,
            ),
        )
    report = FidelityReport(
        rows=tuple(rows),
        basis=basis,
        deficit_threshold=deficit_threshold,
        stability_threshold=stability_threshold,
    )
    if not report.converged:
        logger.warning(
            f'Fidelity run not converged for {basis.to_dict()}: '
            f'max |F-1| = {report.max_error:.3e}',
        )
    logger.info(f'Largest |F - 1| = {report.max_error:.3e}')
    return report


def _state_overlap(analysis: CSParams, state: State) -> complex:
    if isinstance(state, CSParams):
        return overlap(analysis, state)
    return complex(
        sum(
            amplitude * overlap(analysis, component)
            for component, amplitude in zip(
                state.states,
                state.amplitudes,
                strict=True,
            )
        ),
    )


def liouville_check(
    nu: float,
    n: int,
    state: State,
    points: Sequence[PhasePoint],
    t: float,
    size: int,
    *,
    xi_ref: float | None = None,
) -> LiouvilleReport:
    """Compare ``<q,p|exp(-iHt)|psi>`` with ``<Q_-t,P_-t|psi>``.

    Args:
        nu (float): Repulsion index of both families
        n (int): Level of the analysing coherent states
        state (State): The state psi
        points (Sequence[PhasePoint]): Sample labels
        t (float): Time
        size (int): Truncation N
        xi_ref (float | None): Basis scale, from the window by default

    Returns:
        LiouvilleReport: Both sides at every sample point
    """
    if state.nu != nu:
        msg = f'State has nu={state.nu}, analysis family nu={nu}'
        raise ParameterError(msg)
    components = (state,) if isinstance(state, CSParams) else state.states
    scale = xi_ref or min(
        reference_scale(PhasePoint(item.q, item.p), [t], nu, item.n)
        for item in components
    )
    basis = BasisSpec(nu, scale, size)
    hamiltonian = hnu_matrix(basis)
    start = project(state, basis)
    moved = propagate(hamiltonian, start, t)

    propagated = []
    transported = []
    deficit = start.deficit
    for point in points:
        analysis = CSParams(point.q, point.p, nu, n)
        coefficients = project(analysis, basis)
        deficit = max(deficit, coefficients.deficit)
        propagated.append(coefficients.inner(moved))
        transported.append(_state_overlap(evolve_cs(analysis, -t), state))
    return LiouvilleReport(
        t=t,
        points=tuple((point.q, point.p) for point in points),
        propagated=np.asarray(propagated),
        transported=np.asarray(transported),
        deficit=deficit,
    )


def ehrenfest_check(
    params: CSParams,
    times: Sequence[float],
    size: int,
    *,
    xi_ref: float | None = None,
    step: float = EHRENFEST_STEP,
) -> EhrenfestReport:
    """Check ``d<x>/dt = 2<p>`` and ``d<p>/dt = 2(nu^2-1/4)<x^-3>``.

    Derivatives are central differences of propagated expectations;
    residuals are relative to ``max(1, |right side|)``.

    Args:
        params (CSParams): Initial state
        times (Sequence[float]): Times of the check
        size (int): Truncation N
        xi_ref (float | None): Basis scale, from the window by default
        step (float): Finite-difference step

    Returns:
        EhrenfestReport: Residuals per time
    """
    point = PhasePoint(params.q, params.p)
    window = [*times, *(t + step for t in times), *(t - step for t in times)]
    scale = xi_ref or reference_scale(point, window, params.nu, params.n)
    basis = BasisSpec(params.nu, scale, size)
    hamiltonian = hnu_matrix(basis)
    position = basis_operator(basis, 'x_power', 1.0)
    momentum = basis_operator(basis, 'p')
    force = basis_operator(basis, 'x_power', -3.0)
    start = project(params, basis)
    repulsion = params.nu**2 - 0.25

    def at(t: float) -> StateVector:
        return propagate(hamiltonian, start, t)

    position_residual = []
    momentum_residual = []
    for t in times:
        ahead, behind, here = at(t + step), at(t - step), at(t)
        x_rate = (
            position.expectation(ahead) - position.expectation(behind)
        ) / (2.0 * step)
        p_rate = (
            momentum.expectation(ahead) - momentum.expectation(behind)
        ) / (2.0 * step)
        velocity = 2.0 * momentum.expectation(here)
        acceleration = 2.0 * repulsion * force.expectation(here)
        position_residual.append(
            abs(x_rate - velocity) / max(1.0, abs(velocity)),
        )
        momentum_residual.append(
            abs(p_rate - acceleration) / max(1.0, abs(acceleration)),
        )
    return EhrenfestReport(
        times=np.asarray(times, dtype=np.float64),
        position_residual=np.asarray(position_residual),
        momentum_residual=np.asarray(momentum_residual),
    )


def state_amplitudes(
    basis: BasisSpec,
    state: StateVector,
    labels: npt.ArrayLike,
    n: int,
) -> ComplexArray:
    """``<q,p;nu,n|psi>`` for a state given by basis coefficients.

    Args:
        basis (BasisSpec): The basis of the coefficients
        state (StateVector): The state
        labels (ArrayLike): Array of ``(q, p)`` pairs
        n (int): Level of the analysing coherent states

    Returns:
        ComplexArray: One amplitude per label
    """
    pairs = np.atleast_2d(np.asarray(labels, dtype=np.float64))
    return np.array(
        [
            project(CSParams(q, p, basis.nu, n), basis).inner(state)
            for q, p in pairs
        ],
    )
