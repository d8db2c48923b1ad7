"""Tests for coherent-state wavefunctions, overlaps and densities."""

import cmath
import math

import numpy as np
import pytest

from acs.coherent import (
    CSParams,
    PhaseSpaceIntegrator,
    expectation_h,
    expectation_p,
    expectation_x_power,
    expectations,
    gaussian_overlap,
    husimi_density,
    identity_check,
    overlap,
    overlap_grid,
    overlap_modulus_squared_n0,
    phase_factor,
    quadrature_expectations,
    state_rule,
    state_support,
    state_wavefunction,
    superpose,
    wavefunction,
    wavefunction_n0,
)
from acs.errors import ParameterError
from acs.fiducial import FiducialSpec, c0_level
from acs.specfun import graded_panels


class TestCSParams:
    """Test cases for coherent-state labels."""

    def test_scale_is_derived(self, phi0: FiducialSpec) -> None:
        """Test the label carries xi_star of its family."""
        params = CSParams(1.0, 0.5, 3.0, 0)
        assert params.xi == phi0.xi
        assert params.fiducial == phi0

    @pytest.mark.parametrize(
        ('q', 'p', 'nu', 'n'),
        [
            (0.0, 0.0, 3.0, 0),
            (-1.0, 0.0, 3.0, 0),
            (1.0, math.inf, 3.0, 0),
            (1.0, 0.0, 0.5, 0),
            (1.0, 0.0, 3.0, -1),
            (1.0, 0.0, 3.0, 65),
        ],
    )
    def test_invalid_label(
        self,
        q: float,
        p: float,
        nu: float,
        n: int,
    ) -> None:
        """Test that labels outside the half-plane are rejected."""
        with pytest.raises(ParameterError):
            CSParams(q, p, nu, n)

    def test_moved_keeps_family(self) -> None:
        """Test relabelling keeps nu and n."""
        moved = CSParams(1.0, 0.0, 3.0, 1).moved(2.0, -1.0)
        assert (moved.q, moved.p, moved.nu, moved.n) == (2.0, -1.0, 3.0, 1)

    def test_to_dict(self) -> None:
        """Test the dictionary form lists the derived scale."""
        data = CSParams(1.0, 0.0, 3.0, 0).to_dict()
        assert set(data) == {'q', 'p', 'nu', 'n', 'xi'}


class TestWavefunction:
    """Test cases for coherent-state wavefunctions."""

    @pytest.mark.parametrize(('q', 'p'), [(1.0, 0.0), (2.0, 5.0), (0.3, -7)])
    def test_phase_factor(self, q: float, p: float) -> None:
        """Test the principal-branch power equals exp(-i theta)."""
        params = CSParams(q, p, 3.0, 1)
        expected = cmath.exp(-1j * params.phase_angle)
        assert phase_factor(params) == pytest.approx(expected, abs=1e-12)
        assert abs(phase_factor(params)) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize(('q', 'p'), [(1.0, 0.0), (1.5, 0.7), (0.4, -3)])
    def test_explicit_ground_level(self, q: float, p: float) -> None:
        """Test the Gaussian form agrees with the scaled fiducial."""
        params = CSParams(q, p, 3.0, 0)
        x = np.linspace(0.05, 2.5, 40) * q
        np.testing.assert_allclose(
            wavefunction_n0(params, x),
            wavefunction(params, x),
            rtol=1e-10,
            atol=1e-14,
        )

    def test_explicit_form_needs_ground_level(self) -> None:
        """Test the Gaussian form refuses excited fiducials."""
        with pytest.raises(ParameterError):
            wavefunction_n0(CSParams(1.0, 0.0, 3.0, 1), [1.0])

    def test_vanishes_at_origin(self) -> None:
        """Test psi(0) = 0."""
        assert wavefunction(CSParams(1.0, 2.0, 3.0, 0), [0.0])[0] == 0

    @pytest.mark.parametrize('n', [0, 1, 2])
    def test_normalized(self, n: int) -> None:
        """Test every coherent state has unit norm."""
        params = CSParams(1.7, 2.5, 3.0, n)
        nodes, weights = state_rule(params)
        norm = np.sum(weights * np.abs(wavefunction(params, nodes)) ** 2)
        assert norm == pytest.approx(1.0, abs=1e-10)


class TestExpectations:
    """Test cases for closed-form expectation values."""

    @pytest.mark.parametrize('n', [0, 1])
    def test_closed_forms_match_quadrature(self, n: int) -> None:
        """Test every closed form against quadrature of psi."""
        params = CSParams(1.5, 0.7, 3.0, n)
        closed = expectations(params).to_dict()
        measured = quadrature_expectations(params).to_dict()
        for key, value in closed.items():
            assert measured[key] == pytest.approx(value, rel=1e-7), key

    @pytest.mark.parametrize('nu', [1.0, 3.0])
    @pytest.mark.parametrize('n', [0, 1, 2])
    @pytest.mark.parametrize(
        ('q', 'p'),
        [(0.3, -2.0), (1.0, 0.0), (5.0, -4.0)],
    )
    def test_labels_are_matched(
        self,
        nu: float,
        n: int,
        q: float,
        p: float,
    ) -> None:
        """Test <x> = q and <p> = p."""
        values = expectations(CSParams(q, p, nu, n))
        assert values.x == pytest.approx(q, rel=1e-8)
        assert values.p == pytest.approx(p, abs=1e-8)

    def test_momentum_is_label(self) -> None:
        """Test <p> = p at the scaled point."""
        params = CSParams(0.8, -2.3, 2.0, 1)
        assert expectation_p(params) == pytest.approx(-2.3, rel=1e-12)

    def test_energy(self) -> None:
        """Test <H> = [(2n+nu+1)/xi] (p^2 + xi^2/q^2)."""
        params = CSParams(2.0, 1.0, 3.0, 0)
        h_sc = 1.0 + (params.xi / 2.0) ** 2
        assert expectation_h(params) == pytest.approx(4.0 / params.xi * h_sc)

    def test_divergent_power(self) -> None:
        """Test <x^alpha> is tagged divergent below -2 nu - 2."""
        params = CSParams(1.0, 0.0, 1.0, 0)
        assert expectation_x_power(params, -4.0).divergent
        assert not expectation_x_power(params, -3.5).divergent

    def test_position_power_scales(self) -> None:
        """Test <x^alpha> scales like q^alpha."""
        near = expectation_x_power(CSParams(1.0, 0.0, 3.0, 0), 1.5)
        far = expectation_x_power(CSParams(4.0, 0.0, 3.0, 0), 1.5)
        assert far.require() == pytest.approx(8.0 * near.require())


class TestOverlap:
    """Test cases for coherent-state overlaps."""

    def test_self_overlap(self) -> None:
        """Test <a|a> = 1 for identical labels."""
        params = CSParams(1.3, 0.4, 3.0, 1)
        assert overlap(params, params) == 1.0

    @pytest.mark.parametrize('n', [0, 1, 3])
    def test_gaussian_overlap_diagonal(self, n: int) -> None:
        """Test the contour-rotated rule is exact on the diagonal."""
        params = CSParams(1.3, 0.4, 3.0, n)
        side = (params.q, params.p, params.xi, n)
        value = gaussian_overlap(3.0, side, side)
        assert complex(value) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize('n', [0, 1, 2])
    def test_laguerre_matches_adaptive(self, n: int) -> None:
        """Test Gauss-Laguerre overlaps against real-axis quadrature."""
        a = CSParams(1.0, 0.5, 3.0, n)
        b = CSParams(1.6, -0.8, 3.0, n)
        fast = overlap(a, b)
        slow = overlap(a, b, method='adaptive')
        assert fast == pytest.approx(slow, abs=1e-8)

    def test_hermitian(self) -> None:
        """Test <a|b> = conj(<b|a>)."""
        a = CSParams(0.7, 1.1, 2.5, 1)
        b = CSParams(1.9, -0.3, 2.5, 1)
        assert overlap(a, b) == pytest.approx(
            overlap(b, a).conjugate(),
            abs=1e-13,
        )

    @pytest.mark.parametrize(
        ('qa', 'pa', 'qb', 'pb'),
        [(1.0, 0.0, 2.0, 0.0), (0.5, 1.0, 1.5, -2.0), (3.0, 4.0, 2.5, 3.5)],
    )
    def test_ground_level_closed_form(
        self,
        qa: float,
        pa: float,
        qb: float,
        pb: float,
    ) -> None:
        """Test |<a|b>|^2 against the explicit ground-level formula."""
        a = CSParams(qa, pa, 3.0, 0)
        b = CSParams(qb, pb, 3.0, 0)
        assert abs(overlap(a, b)) ** 2 == pytest.approx(
            overlap_modulus_squared_n0(a, b),
            rel=1e-10,
        )

    def test_closed_form_dilation_invariant(self) -> None:
        """Test the ground-level formula under q -> lq, p -> p/l."""
        scale = 2.7
        a = CSParams(0.8, 1.5, 3.0, 0)
        b = CSParams(1.9, -0.4, 3.0, 0)
        moved = overlap_modulus_squared_n0(
            a.moved(scale * a.q, a.p / scale),
            b.moved(scale * b.q, b.p / scale),
        )
        assert moved == pytest.approx(
            overlap_modulus_squared_n0(a, b),
            rel=1e-12,
        )

    def test_closed_form_needs_ground_level(self) -> None:
        """Test the explicit formula refuses excited states."""
        with pytest.raises(ParameterError):
            overlap_modulus_squared_n0(
                CSParams(1.0, 0.0, 3.0, 1),
                CSParams(1.0, 0.0, 3.0, 0),
            )

    def test_family_mismatch(self) -> None:
        """Test overlaps between different nu are rejected."""
        with pytest.raises(ParameterError, match='equal nu'):
            overlap(CSParams(1.0, 0.0, 3.0, 0), CSParams(1.0, 0.0, 2.0, 0))

    def test_bounded_by_one(self) -> None:
        """Test |<a|b>| <= 1 on a grid."""
        analysis = CSParams(1.0, 0.0, 3.0, 1)
        state = CSParams(1.2, 0.3, 3.0, 1)
        values = overlap_grid(
            analysis,
            np.linspace(0.2, 4.0, 9),
            np.linspace(-3, 3, 7),
            state,
        )
        assert np.all(np.abs(values) <= 1.0 + 1e-12)


class TestOverlapGrid:
    """Test cases for overlaps over a grid of analysis labels."""

    def test_matches_pointwise(self) -> None:
        """Test the vectorized grid against single overlaps."""
        state = CSParams(1.4, -0.6, 3.0, 0)
        q_values = np.array([0.5, 1.0, 2.0])
        p_values = np.array([-1.0, 0.0, 1.0, 2.0])
        grid = overlap_grid(
            CSParams(1.0, 0.0, 3.0, 1),
            q_values,
            p_values,
            state,
        )
        assert grid.shape == (3, 4)
        for i, q in enumerate(q_values):
            for j, p in enumerate(p_values):
                single = overlap(CSParams(q, p, 3.0, 1), state)
                assert grid[i, j] == pytest.approx(single, abs=1e-13)

    def test_superposition_is_linear(self) -> None:
        """Test a superposition grid is the weighted sum of its parts."""
        first = CSParams(1.0, 1.0, 3.0, 0)
        second = CSParams(1.0, -1.0, 3.0, 0)
        state = superpose([first, second], [1.0, 1.0j])
        analysis = CSParams(1.0, 0.0, 3.0, 0)
        q_values = np.array([0.8, 1.2])
        p_values = np.array([-0.5, 0.5])
        combined = overlap_grid(analysis, q_values, p_values, state)
        expected = state.amplitudes[0] * overlap_grid(
            analysis,
            q_values,
            p_values,
            first,
        ) + state.amplitudes[1] * overlap_grid(
            analysis,
            q_values,
            p_values,
            second,
        )
        np.testing.assert_allclose(combined, expected, atol=1e-14)


class TestSuperposition:
    """Test cases for superpositions of coherent states."""

    def test_normalized(self) -> None:
        """Test superpose scales the amplitudes to unit norm."""
        state = superpose(
            [CSParams(1.0, 1.0, 3.0, 0), CSParams(1.2, -1.0, 3.0, 0)],
            [1.0, 1.0],
        )
        nodes, weights = graded_panels(state_support(state), uniform=200)
        density = np.abs(state_wavefunction(state, nodes)) ** 2
        assert np.sum(weights * density) == pytest.approx(1.0, abs=1e-10)

    def test_single_component(self) -> None:
        """Test a one-term superposition is the state itself."""
        params = CSParams(1.0, 0.5, 3.0, 1)
        state = superpose([params], [2.0j])
        x = np.linspace(0.1, 3.0, 7)
        np.testing.assert_allclose(
            np.abs(state_wavefunction(state, x)),
            np.abs(wavefunction(params, x)),
            rtol=1e-12,
        )

    @pytest.mark.parametrize(
        ('nus', 'amplitudes'),
        [([3.0, 2.0], [1.0, 1.0]), ([3.0], [0.0]), ([3.0, 3.0], [1.0])],
    )
    def test_invalid(self, nus: list[float], amplitudes: list[float]) -> None:
        """Test inconsistent superpositions are rejected."""
        states = [CSParams(1.0, 0.0, nu, 0) for nu in nus]
        with pytest.raises(ParameterError):
            superpose(states, amplitudes)

    def test_to_dict(self) -> None:
        """Test the dictionary form splits the amplitudes."""
        state = superpose([CSParams(1.0, 0.0, 3.0, 0)], [1.0j])
        data = state.to_dict()
        assert data['amplitudes'] == [[0.0, 1.0]]


class TestHusimi:
    """Test cases for the semi-classical density."""

    def test_ground_level_closed_form(self) -> None:
        """Test the density of a ground-level state."""
        state = CSParams(1.5, 0.5, 3.0, 0)
        q_values = np.array([0.5, 1.5, 3.0])
        p_values = np.array([-1.0, 0.5, 2.0])
        density = husimi_density(state, q_values, p_values)
        scale = 2.0 * math.pi * c0_level(3.0, 0)
        for i, q in enumerate(q_values):
            for j, p in enumerate(p_values):
                expected = overlap_modulus_squared_n0(
                    CSParams(q, p, 3.0, 0),
                    state,
                )
                assert density[i, j] == pytest.approx(
                    expected / scale,
                    rel=1e-10,
                )

    def test_peak_at_label(self) -> None:
        """Test the density of a ground-level state peaks at its label."""
        state = CSParams(1.5, 0.5, 3.0, 0)
        density = husimi_density(
            state,
            np.linspace(0.5, 2.5, 21),
            np.linspace(-1.5, 2.5, 21),
        )
        peak = np.unravel_index(np.argmax(density), density.shape)
        assert peak == (10, 10)
        assert density.max() == pytest.approx(
            1.0 / (2.0 * math.pi * c0_level(3.0, 0)),
        )


class TestPhaseSpaceIntegrator:
    """Test cases for half-plane integrals."""

    def test_needs_vectors(self, phi0: FiducialSpec) -> None:
        """Test an empty list of test vectors is rejected."""
        with pytest.raises(ParameterError):
            PhaseSpaceIntegrator(phi0, [], c0=1.0)

    def test_window_contains_unit_scale(self, phi0: FiducialSpec) -> None:
        """Test the position window brackets the relevant scales."""
        integrator = PhaseSpaceIntegrator(phi0, [phi0], c0=1.0)
        low, high = integrator.window(0.0)
        assert low < 0.5 < 2.0 < high

    @pytest.mark.slow
    def test_resolution_of_identity(self) -> None:
        """Test the coherent states resolve the identity."""
        report = identity_check(3.0, 0)
        assert report.passed
        assert report.gram.shape == (4, 4)
        assert report.integration.converged
        assert report.to_dict()['max_residual'] < 1e-3
