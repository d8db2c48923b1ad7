"""Tests for covariant integral quantization."""

import numpy as np
import pytest

from acs.errors import DivergenceError, ParameterError
from acs.fiducial import GridFiducial, derivative_constants, make_spec, moment
from acs.propagator import BasisSpec
from acs.quantizer import (
    DEFAULT_BASIS,
    SymbolKind,
    SymbolSpec,
    predicted_ratio,
    quantize_elements,
    target_matrix,
    unit_ratio_fiducial,
    verify_d,
    verify_p,
    verify_p2,
    verify_q_power,
)

TOL = 1e-5


class TestSymbolSpec:
    """Test cases for parsing and describing symbols."""

    @pytest.mark.parametrize(
        ('text', 'kind', 'alpha'),
        [
            ('q^2', SymbolKind.Q_POWER, 2.0),
            ('q^-1', SymbolKind.Q_POWER, -1.0),
            ('q', SymbolKind.Q_POWER, 1.0),
            ('1', SymbolKind.Q_POWER, 0.0),
            ('p', SymbolKind.P_LINEAR, 0.0),
            ('qp', SymbolKind.D_SYMBOL, 0.0),
            ('p ^ 2', SymbolKind.P_SQUARED, 0.0),
        ],
    )
    def test_parse(self, text: str, kind: SymbolKind, alpha: float) -> None:
        """Test every supported textual form."""
        symbol = SymbolSpec.parse(text)
        assert symbol.kind is kind
        assert symbol.alpha == alpha

    @pytest.mark.parametrize('text', ['', 'p^3', 'x^2', 'q^a'])
    def test_unsupported(self, text: str) -> None:
        """Test symbols outside the four families are rejected."""
        with pytest.raises(ParameterError):
            SymbolSpec.parse(text)

    def test_powers(self) -> None:
        """Test the exponents integrated over phase space."""
        d_symbol = SymbolSpec(SymbolKind.D_SYMBOL)
        assert (d_symbol.q_power, d_symbol.p_power) == (1.0, 1)
        kinetic = SymbolSpec(SymbolKind.P_SQUARED)
        assert (kinetic.q_power, kinetic.p_power) == (0.0, 2)

    def test_non_finite_exponent(self) -> None:
        """Test a non-finite exponent is rejected."""
        with pytest.raises(ParameterError, match='finite'):
            SymbolSpec(SymbolKind.Q_POWER, float('inf'))

    def test_to_dict(self) -> None:
        """Test the dictionary form."""
        assert SymbolSpec.parse('q^-1').to_dict() == {
            'kind': 'q_power',
            'alpha': -1.0,
            'label': 'q^-1',
        }


class TestPredictions:
    """Test cases for the closed-form side of the checks."""

    def test_identity_ratio(self, rapid_fiducial: GridFiducial) -> None:
        """Test the symbol 1 is predicted to quantize to the identity."""
        ratio = predicted_ratio(SymbolSpec.parse('1'), rapid_fiducial)
        assert ratio == pytest.approx(1.0, rel=1e-14)

    def test_divergent_moment_named(self) -> None:
        """Test a power outside the finiteness window names c_alpha."""
        with pytest.raises(DivergenceError, match='c_7'):
            predicted_ratio(SymbolSpec.parse('q^7'), make_spec(3.0, 0))

    def test_unit_ratio_fiducial(self, rapid_fiducial: GridFiducial) -> None:
        """Test the dilated fiducial has c1 = c0 and then c2 > c0."""
        unit = unit_ratio_fiducial(rapid_fiducial)
        c0 = moment(unit, 0.0).require()
        assert moment(unit, 1.0).require() / c0 == pytest.approx(
            1.0,
            rel=1e-9,
        )
        assert moment(unit, 2.0).require() / c0 > 1.0

    def test_target_matrices(self) -> None:
        """Test the target operators have the expected structure."""
        basis = BasisSpec(3.0, 1.0, 8)
        identity = target_matrix(SymbolSpec.parse('1'), basis).matrix
        np.testing.assert_allclose(identity, np.eye(8), atol=1e-12)
        momentum = target_matrix(SymbolSpec.parse('p'), basis).matrix
        assert np.max(np.abs(momentum.real)) == 0.0
        assert np.max(np.abs(momentum.imag)) > 0.1


@pytest.mark.slow
class TestMeasuredQuantization:
    """Test cases comparing phase-space integrals with closed forms."""

    def test_resolution_of_identity(
        self,
        rapid_fiducial: GridFiducial,
    ) -> None:
        """Test the symbol 1 quantizes to the identity."""
        matrix = quantize_elements(
            SymbolSpec.parse('1'),
            rapid_fiducial,
            DEFAULT_BASIS,
            TOL,
        ).matrix
        np.testing.assert_allclose(matrix, np.eye(8), atol=1e-3)

    @pytest.mark.parametrize('alpha', [-1.0, 1.0, 2.0])
    def test_position_powers(
        self,
        rapid_fiducial: GridFiducial,
        alpha: float,
    ) -> None:
        """Test A_(q^alpha) = (c_alpha / c0) x^alpha."""
        report = verify_q_power(alpha, rapid_fiducial, tol=TOL)
        assert report.error < 1e-3
        assert report.residual < 1e-3

    def test_power_for_level_fiducial(self) -> None:
        """Test the ratio for a ground-level fiducial with large nu."""
        report = verify_q_power(2.0, make_spec(6.0, 0), tol=TOL)
        assert report.error < 1e-3

    def test_momentum(self, rapid_fiducial: GridFiducial) -> None:
        """Test A_p = (c1 / c0) p with a purely imaginary matrix."""
        report = verify_p(rapid_fiducial, tol=TOL)
        assert report.error < 1e-3
        assert report.to_dict()['symbol'] == {
            'kind': 'p_linear',
            'alpha': 0.0,
            'label': 'p',
        }

    def test_momentum_after_dilation(
        self,
        rapid_fiducial: GridFiducial,
    ) -> None:
        """Test the dilated fiducial quantizes p to p itself."""
        report = verify_p(unit_ratio_fiducial(rapid_fiducial), tol=TOL)
        assert report.measured == pytest.approx(1.0, rel=1e-3)

    def test_dilation(self, rapid_fiducial: GridFiducial) -> None:
        """Test A_(qp) = (c2 / c0) d."""
        report = verify_d(rapid_fiducial, tol=TOL)
        assert report.error < 1e-3

    def test_kinetic_energy(self, rapid_fiducial: GridFiducial) -> None:
        """Test A_(p^2) splits into kinetic and repulsive terms."""
        fit = verify_p2(rapid_fiducial, tol=TOL)
        assert fit.kinetic_error < 1e-2
        assert fit.repulsive_error < 1e-2
        assert fit.repulsive > 0
        constants = derivative_constants(rapid_fiducial)
        assert constants.repulsive.require() > 1.5 * moment(
            rapid_fiducial,
            2.0,
        ).require()
