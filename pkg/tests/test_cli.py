"""Tests for the command-line interface and its run directories."""

import json
import math
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner, Result

from acs import __version__
from acs.cli import cli
from acs.errors import ExitCode
from acs.fiducial import make_spec, phi

XI_30 = math.exp(2 * (math.lgamma(4.5) - math.lgamma(4.0)))


def invoke(runner: CliRunner, out: Path, *args: str) -> Result:
    """Run the CLI with its output rooted in ``out``."""
    return runner.invoke(cli, ['--out', str(out), *args])


def run_directory(out: Path, command: str) -> Path:
    """The single run directory of a command."""
    (directory,) = out.glob(f'{command}-*')
    return directory


def read_manifest(directory: Path) -> dict:
    """Load ``manifest.json`` of a run."""
    return json.loads((directory / 'manifest.json').read_text())


def read_csv(path: Path) -> tuple[list[str], np.ndarray]:
    """Header and numeric rows of a CSV file."""
    header = path.read_text().splitlines()[0].split(',')
    rows = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    return header, rows


def check_values(manifest: dict) -> dict[str, float]:
    """Checks of a manifest keyed by name."""
    return {check['name']: check['value'] for check in manifest['checks']}


class TestGroup:
    """Test cases for the command group."""

    def test_help_lists_commands(self, runner: CliRunner) -> None:
        """Test the help text names every subcommand."""
        result = runner.invoke(cli, ['--help'])
        assert result.exit_code == 0
        for command in (
            'fiducial',
            'figures',
            'evolve',
            'quantize',
            'su11',
            'identity',
        ):
            assert command in result.output

    def test_version(self, runner: CliRunner) -> None:
        """Test the version option."""
        result = runner.invoke(cli, ['--version'])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_unknown_command(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test an unknown subcommand exits with the invalid-input code."""
        result = invoke(runner, tmp_path, 'plot')
        assert result.exit_code == ExitCode.INVALID_INPUT

    def test_missing_option(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a missing required option exits with code 1."""
        result = invoke(runner, tmp_path, 'fiducial', '--nu', '3')
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert not list(tmp_path.iterdir())

    def test_malformed_number(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a non-numeric flag exits with code 1."""
        result = invoke(runner, tmp_path, 'su11', '--q', 'two', '--p', '1')
        assert result.exit_code == ExitCode.INVALID_INPUT

    def test_unknown_config_key(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a config file with an unknown key is rejected."""
        config_file = tmp_path / 'settings.json'
        config_file.write_text(json.dumps({'colour': 1}))
        result = runner.invoke(
            cli,
            [
                '--config',
                str(config_file),
                '--out',
                str(tmp_path / 'runs'),
                'su11',
                '--q',
                '2',
                '--p',
                '1',
            ],
        )
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert 'colour' in result.output

    def test_config_override(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a config file value reaches the manifest settings."""
        config_file = tmp_path / 'settings.json'
        overrides = {'grid_count': 30, 'basis_size': 48}
        config_file.write_text(json.dumps(overrides))
        out = tmp_path / 'runs'
        result = runner.invoke(
            cli,
            [
                '--config',
                str(config_file),
                '--out',
                str(out),
                'su11',
                '--q',
                '2',
                '--p',
                '1',
            ],
        )
        assert result.exit_code == 0
        settings = read_manifest(run_directory(out, 'su11'))['settings']
        assert settings['grid_count'] == 30
        assert settings['basis_size'] == 48
        assert settings['identity_threshold'] == 1e-3

    def test_output_dir_from_environment(
        self,
        runner: CliRunner,
        tmp_path: Path,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        """Test ACS_OUTPUT_DIR selects the run root."""
        monkeypatch.setenv('ACS_OUTPUT_DIR', str(tmp_path / 'env'))
        result = runner.invoke(cli, ['su11', '--q', '2', '--p', '1'])
        assert result.exit_code == 0
        assert run_directory(tmp_path / 'env', 'su11').is_dir()


class TestManifest:
    """Test cases for run directories and manifests."""

    def test_successful_run(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a run directory holds its files, log and manifest."""
        result = invoke(runner, tmp_path, 'su11', '--q', '2', '--p', '1')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'su11')
        manifest = read_manifest(directory)

        assert f'{directory.name}: succeeded' in result.output
        assert manifest['run_id'] == directory.name
        assert manifest['command'] == 'su11'
        assert manifest['status'] == 'succeeded'
        assert manifest['exit_code'] == 0
        assert manifest['failure'] is None
        assert manifest['version'] == __version__
        assert manifest['parameters'] == {
            'q': 2.0,
            'p': 1.0,
            'nu': 3.0,
            'size': 24,
        }
        assert manifest['settings']['output_dir'] == str(tmp_path)
        assert manifest['wall_clock'] >= 0.0

    def test_files_listed(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the manifest lists every data file of the run."""
        invoke(runner, tmp_path, 'fiducial', '--nu', '3', '--n', '0,1')
        directory = run_directory(tmp_path, 'fiducial')
        manifest = read_manifest(directory)
        on_disk = {path.name for path in directory.iterdir()}
        assert on_disk == {
            *manifest['files'],
            manifest['log'],
            'manifest.json',
        }

    def test_run_log_is_json(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the run log holds one JSON record per line."""
        invoke(runner, tmp_path, 'su11', '--q', '2', '--p', '1')
        log = run_directory(tmp_path, 'su11') / 'run.log'
        records = [
            json.loads(line) for line in log.read_text().splitlines()
        ]
        messages = [record['record']['message'] for record in records]
        assert any('started' in message for message in messages)
        assert any('finished' in message for message in messages)

    def test_threshold_failure(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a check above its threshold exits with code 2."""
        config_file = tmp_path / 'settings.json'
        config_file.write_text(json.dumps({'constraint_threshold': 1e-30}))
        out = tmp_path / 'runs'
        result = runner.invoke(
            cli,
            [
                '--config',
                str(config_file),
                '--out',
                str(out),
                'fiducial',
                '--nu',
                '3',
                '--n',
                '0',
            ],
        )
        assert result.exit_code == ExitCode.NON_CONVERGENCE
        manifest = read_manifest(run_directory(out, 'fiducial'))
        assert manifest['status'] == 'failed'
        assert manifest['exit_code'] == ExitCode.NON_CONVERGENCE
        assert manifest['failure']['reason'] == 'threshold_exceeded'
        assert 'eigen_residual_n0' in manifest['failure']['details']
        assert manifest['files'] == ['fiducial_n0.json']

    def test_unexpected_exception(
        self,
        runner: CliRunner,
        tmp_path: Path,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        """Test a crash is recorded as an internal error, not bad input."""

        def crash(*_args: object) -> None:
            message = 'singular matrix'
            raise RuntimeError(message)

        monkeypatch.setattr('acs.cli.commands.su11_report', crash)
        result = invoke(runner, tmp_path, 'su11', '--q', '2', '--p', '1')
        assert isinstance(result.exception, RuntimeError)
        assert result.exit_code == ExitCode.INTERNAL_ERROR
        manifest = read_manifest(run_directory(tmp_path, 'su11'))
        assert manifest['status'] == 'failed'
        assert manifest['exit_code'] == ExitCode.INTERNAL_ERROR
        assert manifest['failure'] == {
            'reason': 'internal_error',
            'message': 'singular matrix',
        }


class TestFiducialCommand:
    """Test cases for the fiducial subcommand."""

    def test_three_levels(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the reports of n = 0, 1, 2 at nu = 3."""
        result = invoke(
            runner,
            tmp_path,
            'fiducial',
            '--nu',
            '3',
            '--n',
            '0,1,2',
        )
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'fiducial')
        manifest = read_manifest(directory)

        assert manifest['files'] == [
            'fiducial_n0.json',
            'fiducial_n1.json',
            'fiducial_n2.json',
        ]
        assert all(check['passed'] for check in manifest['checks'])
        assert manifest['results']['n0']['xi_star'] == pytest.approx(
            XI_30,
            rel=1e-10,
        )
        report = json.loads((directory / 'fiducial_n0.json').read_text())
        assert report['xi_star'] == pytest.approx(3.758253, abs=1e-6)
        assert report['eigen_residual'] < 1e-8

    def test_invalid_nu(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test nu at or below 1/2 exits with code 1 and a manifest."""
        result = invoke(
            runner,
            tmp_path,
            'fiducial',
            '--nu',
            '0.4',
            '--n',
            '0',
        )
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert 'nu must exceed 1/2' in result.output
        manifest = read_manifest(run_directory(tmp_path, 'fiducial'))
        assert manifest['status'] == 'failed'
        assert manifest['failure']['reason'] == 'invalid_input'
        assert manifest['files'] == []

    def test_malformed_levels(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a level list that is not integers."""
        result = invoke(
            runner,
            tmp_path,
            'fiducial',
            '--nu',
            '3',
            '--n',
            '0,x',
        )
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert 'Levels must be non-negative integers' in result.output


class TestFiguresCommand:
    """Test cases for the figures subcommand."""

    def test_unknown_figure(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test only the three figures are accepted."""
        result = invoke(runner, tmp_path, 'figures', 'fig4')
        assert result.exit_code == ExitCode.INVALID_INPUT

    def test_fig3(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the fiducial curves, their norms and node counts."""
        result = invoke(runner, tmp_path, 'figures', 'fig3')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'figures')
        manifest = read_manifest(directory)

        assert manifest['files'] == [
            'fig3_n0.csv',
            'fig3_n1.csv',
            'fig3_n2.csv',
        ]
        checks = check_values(manifest)
        for n in (0, 1, 2):
            assert checks[f'norm_n{n}'] < 1e-8
            assert checks[f'nodes_n{n}'] == 0
        assert manifest['notes']

    def test_fig3_values(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the CSV values read back exactly."""
        invoke(runner, tmp_path, 'figures', 'fig3')
        path = run_directory(tmp_path, 'figures') / 'fig3_n1.csv'
        header, rows = read_csv(path)
        assert header == ['x', 'density']
        points = np.ascontiguousarray(rows[:, 0])
        expected = phi(make_spec(3.0, 1), points) ** 2
        np.testing.assert_allclose(rows[:, 1], expected, rtol=1e-13, atol=0)

    def test_csv_format(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test LF line endings and a trailing newline."""
        invoke(runner, tmp_path, 'figures', 'fig3')
        path = run_directory(tmp_path, 'figures') / 'fig3_n0.csv'
        raw = path.read_bytes()
        assert b'\r' not in raw
        assert raw.endswith(b'\n')
        assert raw.startswith(b'x,density\n')

    def test_runs_are_reproducible(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test two runs write identical data."""
        invoke(runner, tmp_path, 'figures', 'fig3')
        invoke(runner, tmp_path, 'figures', 'fig3')
        first, second = sorted(tmp_path.glob('figures-*'))
        for name in ('fig3_n0.csv', 'fig3_n1.csv', 'fig3_n2.csv'):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_fig2(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the peak value of n = 0 and the central hole of n = 1."""
        result = invoke(runner, tmp_path, 'figures', 'fig2')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'figures')
        manifest = read_manifest(directory)
        results = manifest['results']

        assert all(check['passed'] for check in manifest['checks'])
        assert results['center_density']['n0'] == pytest.approx(
            results['expected_peak'],
            rel=1e-6,
        )
        assert results['center_density']['n1'] < results['grid_max']['n1']

        header, rows = read_csv(directory / 'fig2_n0.csv')
        assert header == ['q', 'p', 'rho']
        assert rows.shape == (100 * 100, 3)
        assert np.all(rows[:, 2] >= 0.0)

    def test_fig1(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the panels follow the trajectory and its bounce."""
        result = invoke(runner, tmp_path, 'figures', 'fig1')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'figures')
        manifest = read_manifest(directory)

        assert len(manifest['files']) == 7
        assert 'fig1_trajectory.csv' in manifest['files']
        assert all(check['passed'] for check in manifest['checks'])
        assert manifest['results']['trajectory_q_min'] == pytest.approx(
            0.9234,
            abs=1e-4,
        )
        header, rows = read_csv(directory / 'fig1_trajectory.csv')
        assert header == ['t', 'q', 'p', 'phase']
        assert rows[0, 1] == pytest.approx(5.0)
        assert rows[0, 2] == pytest.approx(-4.0)
        panel = manifest['results']['panels'][0]
        assert panel['metadata']['t'] == 0.0
        assert [axis['name'] for axis in panel['axes']] == ['q', 'p']


class TestEvolveCommand:
    """Test cases for the evolve subcommand."""

    def test_short_evolution(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the fidelity table of a short run from (1, 0)."""
        result = invoke(
            runner,
            tmp_path,
            'evolve',
            '--q0',
            '1',
            '--p0',
            '0',
            '--times',
            '0,0.2',
            '--size',
            '64',
        )
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'evolve')
        header, rows = read_csv(directory / 'fidelity.csv')
        assert header[:4] == ['t', 're_f', 'im_f', 'abs_f_minus_1']
        assert rows.shape == (2, 9)
        assert rows[0, 1] == 1.0
        assert rows[0, 2] == 0.0
        assert np.max(rows[:, 3]) < 1e-5

        manifest = read_manifest(directory)
        assert manifest['results']['size'] == 64
        assert manifest['results']['converged']
        assert 'trajectory.csv' in manifest['files']

    def test_size_below_minimum(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a basis below 32 functions is rejected."""
        result = invoke(runner, tmp_path, 'evolve', '--size', '16')
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert 'Basis size must be at least 32' in result.output

    def test_zero_size(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test an explicit zero size is refused before any run starts."""
        result = invoke(runner, tmp_path, 'evolve', '--size', '0')
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert not list(tmp_path.iterdir())

    def test_malformed_times(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a time list that is not numeric."""
        result = invoke(runner, tmp_path, 'evolve', '--times', '0,soon')
        assert result.exit_code == ExitCode.INVALID_INPUT
        manifest = read_manifest(run_directory(tmp_path, 'evolve'))
        assert manifest['failure']['reason'] == 'invalid_input'

    @pytest.mark.slow
    def test_default_trajectory(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test the run through (5, -4) stays on the trajectory."""
        result = invoke(runner, tmp_path, 'evolve', '--size', '256')
        assert result.exit_code == 0
        results = read_manifest(run_directory(tmp_path, 'evolve'))['results']
        assert results['max_error'] < 1e-5
        assert results['trajectory_q_min'] == pytest.approx(0.9234, abs=1e-4)
        assert results['bounce']['time'] == pytest.approx(0.6036, abs=1e-4)


class TestQuantizeCommand:
    """Test cases for the quantize subcommand."""

    def test_unsupported_symbol(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test a symbol outside the supported family."""
        result = invoke(runner, tmp_path, 'quantize', '--symbol', 'p^3')
        assert result.exit_code == ExitCode.INVALID_INPUT
        manifest = read_manifest(run_directory(tmp_path, 'quantize'))
        assert manifest['failure']['reason'] == 'invalid_input'

    def test_unknown_fiducial(
        self,
        runner: CliRunner,
        tmp_path: Path,
    ) -> None:
        """Test the fiducial choice is restricted."""
        result = invoke(
            runner,
            tmp_path,
            'quantize',
            '--symbol',
            'q',
            '--fiducial',
            'gauss',
        )
        assert result.exit_code == ExitCode.INVALID_INPUT

    def test_zero_tolerance(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test an explicit zero tolerance is not replaced by the default."""
        result = invoke(
            runner, tmp_path, 'quantize', '--symbol', 'q', '--tol', '0'
        )
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert not list(tmp_path.iterdir())

    @pytest.mark.slow
    def test_q_squared(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test q^2 with the ground-state fiducial at nu = 6."""
        result = invoke(
            runner,
            tmp_path,
            'quantize',
            '--symbol',
            'q^2',
            '--nu',
            '6',
            '--tol',
            '1e-5',
        )
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'quantize')
        results = read_manifest(directory)['results']
        assert results['measured'] == pytest.approx(
            results['predicted'],
            rel=1e-3,
        )
        assert (directory / 'quantize.json').is_file()


class TestSU11Command:
    """Test cases for the su11 subcommand."""

    def test_matrix(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test alpha and beta of V_(2,1)."""
        result = invoke(runner, tmp_path, 'su11', '--q', '2', '--p', '1')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'su11')
        manifest = read_manifest(directory)
        assert manifest['results']['alpha'] == pytest.approx([1.25, 0.25])
        assert manifest['results']['beta'] == pytest.approx([-0.25, -0.75])
        assert all(check['passed'] for check in manifest['checks'])

        report = json.loads((directory / 'su11.json').read_text())
        assert report['cartan_left']['side'] == 'left'
        assert report['cartan_right']['side'] == 'right'

    def test_nonpositive_q(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a label with q <= 0 exits with code 1."""
        result = invoke(runner, tmp_path, 'su11', '--q', '-1', '--p', '0')
        assert result.exit_code == ExitCode.INVALID_INPUT
        manifest = read_manifest(run_directory(tmp_path, 'su11'))
        assert manifest['failure']['reason'] == 'invalid_input'


class TestIdentityCommand:
    """Test cases for the identity subcommand."""

    @pytest.mark.slow
    def test_ground_state(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the resolution of the identity with Phi_0 at nu = 3."""
        result = invoke(runner, tmp_path, 'identity', '--nu', '3', '--n', '0')
        assert result.exit_code == 0
        directory = run_directory(tmp_path, 'identity')
        results = read_manifest(directory)['results']
        assert results['max_residual'] < 1e-3
        header, rows = read_csv(directory / 'residuals.csv')
        assert header == ['i', 'j', 'residual', 're_gram', 'im_gram']
        assert rows.shape == (16, 5)

    @pytest.mark.parametrize('tol', ['0', '-1e-06'])
    def test_nonpositive_tolerance(
        self,
        runner: CliRunner,
        tmp_path: Path,
        tol: str,
    ) -> None:
        """Test a tolerance that is not positive is refused."""
        result = invoke(
            runner,
            tmp_path,
            'identity',
            '--nu',
            '3',
            '--n',
            '0',
            f'--tol={tol}',
        )
        assert result.exit_code == ExitCode.INVALID_INPUT
        assert not list(tmp_path.iterdir())
