"""Tests for figure data, grid models, writers and input validators."""

from pathlib import Path

import numpy as np
import pytest

from acs.cli.figures import (
    interior_minima,
    refine_peak,
    sample_trajectory,
)
from acs.cli.models import Axis, Check, GridData, RunManifest
from acs.cli.validators import (
    parse_float_list,
    parse_level_list,
    validate_evolve_size,
)
from acs.cli.writers import write_csv, write_json
from acs.dynamics import PhasePoint, bounce
from acs.errors import ParameterError, QuadratureError


def gaussian_grid(q0: float, p0: float) -> GridData:
    """A tilted Gaussian bump whose logarithm is exactly quadratic."""
    axes = (Axis('q', 0.0, 4.0, 41), Axis('p', -2.0, 2.0, 21))
    q, p = np.meshgrid(axes[0].values, axes[1].values, indexing='ij')
    dq, dp = q - q0, p - p0
    values = np.exp(-(dq**2 + 0.5 * dq * dp + 2.0 * dp**2))
    return GridData('test', 'bump', axes, values, 'rho')


class TestAxis:
    """Test cases for Axis."""

    def test_linear_values(self) -> None:
        """Test linear spacing and step."""
        axis = Axis('x', 0.0, 1.0, 5)
        np.testing.assert_allclose(axis.values, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert axis.step == 0.25

    def test_log_values(self) -> None:
        """Test logarithmic spacing."""
        axis = Axis('x', 1.0, 100.0, 3, 'log')
        np.testing.assert_allclose(axis.values, [1.0, 10.0, 100.0])
        assert axis.to_dict()['scale'] == 'log'


class TestGridData:
    """Test cases for GridData."""

    def test_rows_are_row_major(self) -> None:
        """Test the last axis varies fastest."""
        axes = (Axis('q', 1.0, 2.0, 2), Axis('p', 0.0, 2.0, 3))
        values = np.arange(6.0).reshape(2, 3)
        grid = GridData('fig', 'panel', axes, values, 'rho')
        rows = grid.rows()
        assert grid.header == ['q', 'p', 'rho']
        np.testing.assert_array_equal(rows[:, 0], [1, 1, 1, 2, 2, 2])
        np.testing.assert_array_equal(rows[:, 1], [0, 1, 2, 0, 1, 2])
        np.testing.assert_array_equal(rows[:, 2], np.arange(6.0))

    def test_shape_mismatch(self) -> None:
        """Test values must match the axes."""
        axes = (Axis('q', 1.0, 2.0, 2), Axis('p', 0.0, 2.0, 3))
        with pytest.raises(ParameterError):
            GridData('fig', 'panel', axes, np.zeros((3, 2)), 'rho')

    def test_non_finite_values(self) -> None:
        """Test NaN values are reported as a quadrature failure."""
        values = np.array([1.0, np.nan, 2.0])
        with pytest.raises(QuadratureError):
            GridData('fig', 'panel', (Axis('x', 0, 1, 3),), values, 'y')


class TestCheck:
    """Test cases for Check and RunManifest."""

    def test_threshold_is_strict(self) -> None:
        """Test a value equal to its threshold fails."""
        assert Check('a', 0.5, 1.0).passed
        assert not Check('b', 1.0, 1.0).passed

    def test_manifest_status(self) -> None:
        """Test the status follows the exit code."""
        manifest = RunManifest(
            run_id='su11-1',
            command='su11',
            parameters={},
            settings={},
            version='0.1.0',
            started='2026-01-01T00:00:00+00:00',
            wall_clock=0.1,
            files=(),
            checks=(Check('a', 2.0, 1.0),),
            results={},
            exit_code=2,
        )
        result = manifest.to_dict()
        assert result['status'] == 'failed'
        assert result['checks'][0]['passed'] is False
        assert result['log'] == 'run.log'


class TestRefinePeak:
    """Test cases for refine_peak."""

    def test_between_nodes(self) -> None:
        """Test a maximum off the grid nodes is located exactly."""
        grid = gaussian_grid(2.03, 0.37)
        q, p = refine_peak(grid)
        assert q == pytest.approx(2.03, abs=1e-10)
        assert p == pytest.approx(0.37, abs=1e-10)

    def test_border_maximum(self) -> None:
        """Test a maximum on the border is returned unrefined."""
        grid = gaussian_grid(-1.0, 0.0)
        q, p = refine_peak(grid)
        assert q == 0.0
        assert p in grid.axes[1].values


class TestInteriorMinima:
    """Test cases for interior_minima."""

    def test_counts_nodes(self) -> None:
        """Test the zeros of sin^2 are counted."""
        x = np.linspace(0.1, 3 * np.pi - 0.1, 301)
        assert interior_minima(np.sin(x) ** 2) == 2

    def test_flat_tail(self) -> None:
        """Test equal neighbours are not minima."""
        assert interior_minima(np.array([3.0, 1.0, 0.0, 0.0, 0.0])) == 0


class TestSampleTrajectory:
    """Test cases for sample_trajectory."""

    def test_includes_turn(self) -> None:
        """Test the polyline passes through the bounce."""
        point = PhasePoint(5.0, -4.0)
        turn = bounce(point, 3.0, 0)
        path = sample_trajectory(point, [0.0, 1.5], 3.0, 0, turn.time)
        assert turn.time in path.times
        assert path.q_min == pytest.approx(turn.q_min, rel=1e-10)

    def test_negative_times(self) -> None:
        """Test the span reaches back to negative times."""
        path = sample_trajectory(PhasePoint(1.0, 1.0), [-1.0], 3.0, 0, 5.0)
        assert path.times[0] == -1.0
        assert path.times[-1] == 0.0


class TestWriters:
    """Test cases for the CSV and JSON writers."""

    def test_csv_precision(self, tmp_path: Path) -> None:
        """Test 17 significant digits survive a read-back."""
        path = tmp_path / 'table.csv'
        rows = np.array([[1.0 / 3.0, np.pi], [1e-300, -2.5]])
        write_csv(path, ['a', 'b'], rows)
        lines = path.read_text().splitlines()
        assert lines[0] == 'a,b'
        back = np.loadtxt(path, delimiter=',', skiprows=1)
        np.testing.assert_array_equal(back, rows)

    def test_never_overwrites(self, tmp_path: Path) -> None:
        """Test an existing file is kept."""
        path = tmp_path / 'report.json'
        write_json(path, {'a': 1})
        with pytest.raises(FileExistsError):
            write_json(path, {'a': 2})
        with pytest.raises(FileExistsError):
            write_csv(path, ['a'], np.zeros((1, 1)))

    def test_json_numpy_values(self, tmp_path: Path) -> None:
        """Test numpy scalars, arrays and complex numbers are written."""
        path = tmp_path / 'report.json'
        write_json(
            path,
            {
                'scalar': np.float64(0.5),
                'array': np.arange(3),
                'complex': 1.0 - 2.0j,
                'path': tmp_path,
            },
        )
        text = path.read_text()
        assert '"scalar": 0.5' in text
        assert text.endswith('}\n')
        assert '-2.0' in text


class TestValidators:
    """Test cases for command-line input validators."""

    def test_float_list(self) -> None:
        """Test spaces and empty items are ignored."""
        values, error = parse_float_list(' 0, 0.5 ,,1e-1', 'Times')
        assert values == (0.0, 0.5, 0.1)
        assert error is None

    @pytest.mark.parametrize('text', ['', ',', 'a,1', '1,inf', 'nan'])
    def test_float_list_rejected(self, text: str) -> None:
        """Test empty, non-numeric and non-finite lists."""
        values, error = parse_float_list(text, 'Times')
        assert values is None
        assert error is not None
        assert error.startswith('Times')

    def test_level_list(self) -> None:
        """Test levels parse to integers."""
        assert parse_level_list('0,1, 2') == ((0, 1, 2), None)

    @pytest.mark.parametrize('text', ['', '-1', '1.5', 'one'])
    def test_level_list_rejected(self, text: str) -> None:
        """Test negative, fractional and empty lists."""
        levels, error = parse_level_list(text)
        assert levels is None
        assert error is not None

    def test_evolve_size(self) -> None:
        """Test the smallest basis of a propagation run."""
        assert validate_evolve_size(32) == (True, None)
        is_valid, error = validate_evolve_size(31)
        assert not is_valid
        assert error == 'Basis size must be at least 32'
