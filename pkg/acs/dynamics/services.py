"""Semiclassical flow of coherent-state labels.

Schrodinger evolution under ``H_nu`` moves ``|q,p;nu,n>`` along the
Hamiltonian flow of ``H_sc = p^2 + xi^2/q^2`` with ``xi = xi_star(nu, n)``.
The flow has the closed form

    q_t^2 = q^2 + 4 q p t + 4 H_sc t^2,    q_t p_t = q p + 2 H_sc t,

so every trajectory bounces off ``q_min = xi / sqrt(H_sc)``. The phase
``phi(t) = (2n + nu + 1) arctan(q_t p_t / xi)`` is the one carried by
the label itself, so no additional phase appears in the evolved state.
"""

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from acs.coherent import CSParams
from acs.dynamics.models import Bounce, PhasePoint, Trajectory
from acs.dynamics.validators import validate_times
from acs.errors import ParameterError
from acs.fiducial import omega_tilde, xi_star
from acs.specfun import FloatArray


def h_sc(point: PhasePoint, nu: float, n: int) -> float:
    """Semiclassical energy ``p^2 + xi_(nu,n)^2 / q^2``.

    Args:
        point (PhasePoint): The point
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        float: H_sc, strictly positive
    """
    xi = xi_star(nu, n)
    return point.p**2 + (xi / point.q) ** 2


def _flow_arrays(
    point: PhasePoint,
    xi: float,
    times: npt.ArrayLike,
) -> tuple[FloatArray, FloatArray]:
    t = np.asarray(times, dtype=np.float64)
    energy = point.p**2 + (xi / point.q) ** 2
    action = point.q * point.p + 2.0 * energy * t
    q_t = np.sqrt((action * action + xi * xi) / energy)
    return q_t, action / q_t


def flow(point: PhasePoint, t: float, nu: float, n: int) -> PhasePoint:
    """Advance a point along the semiclassical flow.

    Args:
        point (PhasePoint): Initial point
        t (float): Time, of either sign
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        PhasePoint: The point at time t
    """
    if t == 0:
        return point
    q_t, p_t = _flow_arrays(point, xi_star(nu, n), t)
    return PhasePoint(float(q_t), float(p_t))


def phase(point: PhasePoint, t: float, nu: float, n: int) -> float:
    """Dynamical phase ``(omega_tilde / 2 xi) arctan(q_t p_t / xi)``.

    Args:
        point (PhasePoint): Initial point
        t (float): Time
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        float: phi(t), zero whenever ``q_t p_t = 0``
    """
    xi = xi_star(nu, n)
    moved = flow(point, t, nu, n)
    factor = omega_tilde(nu, n) / (2.0 * xi)
    return factor * math.atan(moved.q * moved.p / xi)


def evolve_cs(params: CSParams, t: float) -> CSParams:
    """Label of ``exp(-i H_nu t) |q,p;nu,n>``.

    Args:
        params (CSParams): Initial state
        t (float): Time

    Returns:
        CSParams: The evolved state, same family
    """
    moved = flow(PhasePoint(params.q, params.p), t, params.nu, params.n)
    return params.moved(moved.q, moved.p)


def trajectory(
    point: PhasePoint,
    times: Sequence[float] | FloatArray,
    nu: float,
    n: int,
) -> Trajectory:
    """Sample the flow and its phase.

    Args:
        point (PhasePoint): Initial point
        times (Sequence[float] | FloatArray): Sample times
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        Trajectory: Positions, momenta and phase at every time

    Raises:
        ParameterError: If the times are empty or not finite
    """
    samples = np.asarray(times, dtype=np.float64)
    is_valid, error = validate_times(list(samples))
    if not is_valid:
        raise ParameterError(str(error))
    xi = xi_star(nu, n)
    q_t, p_t = _flow_arrays(point, xi, samples)
    level = 2 * n + nu + 1
    return Trajectory(
        times=samples,
        q=q_t,
        p=p_t,
        phase=level * np.arctan(q_t * p_t / xi),
        energy=h_sc(point, nu, n),
    )


def bounce(point: PhasePoint, nu: float, n: int) -> Bounce:
    """Turning time and minimal position of the trajectory through a point.

    Args:
        point (PhasePoint): Any point of the trajectory
        nu (float): Repulsion index
        n (int): Fiducial level

    Returns:
        Bounce: ``t* = -q p / (2 H_sc)`` and ``q_min = xi / sqrt(H_sc)``
    """
    energy = h_sc(point, nu, n)
    return Bounce(
        time=-point.q * point.p / (2.0 * energy),
        q_min=xi_star(nu, n) / math.sqrt(energy),
        energy=energy,
    )
