"""Integrals over the half-plane of coherent-state matrix elements.

The resolution of the identity and covariant integral quantization both
reduce to matrices

    M_ij = 1/(2 pi c0) int q^a p^m conj(h_i(q, p)) h_j(q, p) dq dp

with ``h_i(q, p) = <q,p|phi_i>``. For a fixed ``q`` the amplitudes are
sums over a radial grid, ``h_i(p) = sum_x g_i(x) exp(-i p x^2 / 2q)``,
so ``conj(h_i) h_j`` has a definite parity in ``p`` and only ``p >= 0``
is integrated. The momentum integral is truncated at a cutoff found by
doubling until the bound on the discarded power-law tail is negligible;
that bound is integrated over ``q`` alongside the matrix and reported as
part of the error budget.
"""

import math
from collections.abc import Sequence

import numpy as np
from loguru import logger
from scipy.integrate import quad_vec

from acs.coherent.models import PhaseSpaceResult
from acs.errors import ConvergenceError, DivergenceError, ParameterError
from acs.fiducial import RadialState
from acs.specfun import ComplexArray, FloatArray, graded_panels

SCAN_BOUNDS = (1e-3, 1e3)
SCAN_POINTS = 241
WINDOW_THRESHOLD = 1e-10
FLAT_DECAY = 50.0
MIN_PANELS = 40
MAX_PANELS = 4000
MAX_DOUBLINGS = 40
TAIL_FRACTION = 1e-2
TAIL_PROBES = (1.0, 1.1, 1.2, 1.3)
INNER_LIMIT = 2000
OUTER_LIMIT = 200


class PhaseSpaceIntegrator:
    """Integrate ``q^a p^m`` weighted coherent-state projectors.

    Args:
        fiducial (RadialState): Fiducial vector generating the states
        vectors (Sequence[RadialState]): Real test vectors phi_i
        c0 (float): ``c_0`` of the fiducial
        tol (float): Relative tolerance of both adaptive stages
    """

    def __init__(
        self,
        fiducial: RadialState,
        vectors: Sequence[RadialState],
        *,
        c0: float,
        tol: float = 1e-6,
    ) -> None:
        """Store the fiducial, the test vectors and the tolerance."""
        if not vectors:
            msg = 'At least one test vector is required'
            raise ParameterError(msg)
        if not c0 > 0 or not tol > 0:
            msg = f'c0 and tol must be positive, got {c0} and {tol}'
            raise ParameterError(msg)
        self.fiducial = fiducial
        self.vectors = tuple(vectors)
        self.c0 = c0
        self.tol = tol
        self._upper = np.triu_indices(len(self.vectors))
        self._support = max(vector.support for vector in self.vectors)
        edge = fiducial.edge_exponent + min(
            vector.edge_exponent for vector in self.vectors
        )
        self.decay = edge + 1.0 if math.isfinite(edge) else FLAT_DECAY

    def _grid(self, q: float, cutoff: float) -> tuple[FloatArray, FloatArray]:
        upper = min(q * self.fiducial.support, self._support)
        phase = cutoff * upper * upper / (2.0 * q)
        panels = int(
            min(MAX_PANELS, MIN_PANELS + math.ceil(phase / math.pi)),
        )
        return graded_panels(upper, uniform=panels)

    def _amplitudes(
        self,
        q: float,
        cutoff: float,
    ) -> tuple[FloatArray, FloatArray]:
        nodes, weights = self._grid(q, cutoff)
        envelope = weights * self.fiducial(nodes / q) / math.sqrt(q)
        table = np.stack([vector(nodes) for vector in self.vectors])
        return nodes * nodes / (2.0 * q), envelope * table

    def _marginal(self, q: float) -> float:
        nodes, weights = self._grid(q, 0.0)
        density = self.fiducial(nodes / q) ** 2 / nodes
        table = np.stack([vector(nodes) for vector in self.vectors]) ** 2
        return float(np.max(table @ (weights * density)))

    @staticmethod
    def _h(momentum: float, u: FloatArray, g: FloatArray) -> ComplexArray:
        return g @ np.exp(-1j * momentum * u)

    def _tail(
        self,
        cutoff: float,
        u: FloatArray,
        g: FloatArray,
        p_power: int,
    ) -> float:
        peak = max(
            float(np.max(np.abs(self._h(cutoff * probe, u, g)) ** 2))
            for probe in TAIL_PROBES
        )
        exponent = self.decay - p_power - 1.0
        return 2.0 * peak * cutoff ** (p_power + 1) / exponent

    def _cutoff(
        self,
        q: float,
        p_power: int,
    ) -> tuple[float, FloatArray, FloatArray, float, float]:
        marginal = self._marginal(q)
        target = TAIL_FRACTION * self.tol * max(marginal, 1e-300)
        cutoff = 1.0 / q
        for _ in range(MAX_DOUBLINGS):
            u, g = self._amplitudes(q, cutoff)
            tail = self._tail(cutoff, u, g, p_power)
            if tail <= target:
                return cutoff, u, g, tail, marginal
            cutoff *= 2.0
        msg = f'Momentum cutoff search did not settle at q={q}'
        raise ConvergenceError(msg, {'q': q, 'cutoff': cutoff, 'tail': tail})

    def window(self, q_power: float) -> tuple[float, float]:
        """Position range outside which the integrand is negligible.

        Args:
            q_power (float): Exponent a of the symbol

        Returns:
            tuple[float, float]: Lower and upper position bound
        """
        scan = np.linspace(
            math.log(SCAN_BOUNDS[0]),
            math.log(SCAN_BOUNDS[1]),
            SCAN_POINTS,
        )
        proxy = np.array(
            [
                math.exp((q_power + 1.0) * s) * self._marginal(math.exp(s))
                for s in scan
            ],
        )
        significant = np.flatnonzero(proxy >= WINDOW_THRESHOLD * proxy.max())
        first = max(int(significant[0]) - 1, 0)
        last = min(int(significant[-1]) + 1, SCAN_POINTS - 1)
        if first == 0 or last == SCAN_POINTS - 1:
            logger.warning(
                f'Phase-space window reaches the scan edge: '
                f'[{math.exp(scan[first])}, {math.exp(scan[last])}]',
            )
        return math.exp(scan[first]), math.exp(scan[last])

    def integrate(self, q_power: float, p_power: int) -> PhaseSpaceResult:
        """Integrate the matrix of the symbol ``q^a p^m``.

        Args:
            q_power (float): Exponent a
            p_power (int): Exponent m, 0 to 2

        Returns:
            PhaseSpaceResult: Hermitian matrix with its error budget

        Raises:
            DivergenceError: If the momentum integral diverges
        """
        if not self.decay > p_power + 1:
            msg = (
                f'Momentum integral of p^{p_power} diverges for decay '
                f'exponent {self.decay}'
            )
            raise DivergenceError(msg, {'decay': self.decay})

        q_low, q_high = self.window(q_power)
        pairs = len(self._upper[0])
        odd = p_power % 2 == 1
        largest_cutoff = 0.0
        evaluations = 0
        inner_converged = True

        def inner(momentum: float, u: FloatArray, g: FloatArray) -> FloatArray:
            h = self._h(momentum, u, g)
            product = (np.conj(h)[:, None] * h[None, :])[self._upper]
            part = product.imag if odd else product.real
            return 2.0 * momentum**p_power * part

        def outer(s: float) -> FloatArray:
            nonlocal largest_cutoff, evaluations, inner_converged
            q = math.exp(s)
            cutoff, u, g, tail, marginal = self._cutoff(q, p_power)
            value, error, info = quad_vec(
                inner,
                0.0,
                cutoff,
                epsabs=1e-3 * self.tol * marginal,
                epsrel=self.tol,
                norm='max',
                limit=INNER_LIMIT,
                full_output=True,
                args=(u, g),
            )
            largest_cutoff = max(largest_cutoff, cutoff)
            evaluations += info.neval
            inner_converged = inner_converged and info.success
            measure = q ** (q_power + 1.0) / (2.0 * math.pi * self.c0)
            return measure * np.concatenate([value, [tail, error]])

        totals, error, info = quad_vec(
            outer,
            math.log(q_low),
            math.log(q_high),
            epsabs=0.1 * self.tol,
            epsrel=self.tol,
            norm='max',
            limit=OUTER_LIMIT,
            full_output=True,
        )
        converged = inner_converged and info.success
        if not converged:
            logger.warning(
                f'Phase-space integration of q^{q_power} p^{p_power} '
                f'missed its tolerance',
            )

        size = len(self.vectors)
        values = np.zeros((size, size), dtype=np.complex128)
        entries = totals[:pairs] * (1j if odd else 1.0)
        values[self._upper] = entries
        values = values + np.conj(np.triu(values, 1)).T
        result = PhaseSpaceResult(
            matrix=values,
            error=float(error) + float(totals[pairs + 1]),
            tail=float(totals[pairs]),
            q_window=(q_low, q_high),
            p_cutoff=largest_cutoff,
            evaluations=evaluations,
            converged=converged,
        )
        logger.debug(
            f'Integrated q^{q_power} p^{p_power} over {size} vectors: '
            f'{result.to_dict()}',
        )
        return result
