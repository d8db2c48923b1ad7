"""Run directories, manifests and the work behind each subcommand.

Every subcommand runs inside a :class:`RunContext`. It creates
``<out>/<command>-<UTC time>/`` with a JSON log, collects files and
checks, and finally writes ``manifest.json``. Library exceptions become
exit codes the way the routes of a web service turn them into status
codes, and each nonzero exit leaves a manifest with the failure reason.
"""

import time
from collections.abc import Callable, Sequence
from datetime import datetime, timezone
from functools import wraps
from pathlib import Path
from typing import Any

import click
import numpy as np
from loguru import logger

from acs import __version__
from acs.cli.figures import FIGURES, sample_trajectory
from acs.cli.models import Check, GridData, RunManifest
from acs.cli.validators import (
    parse_float_list,
    parse_level_list,
    validate_evolve_size,
)
from acs.cli.writers import write_csv, write_json
from acs.coherent import identity_check
from acs.dynamics import PhasePoint, bounce
from acs.errors import AcsError, ConvergenceError, ExitCode, ParameterError
from acs.fiducial import (
    FiducialSpec,
    GridFiducial,
    eigen_residual,
    make_spec,
    moment_report,
)
from acs.logging_config import add_run_log, remove_run_log
from acs.propagator import BasisSpec, fidelity_report
from acs.quantizer import (
    DEFAULT_BASIS,
    SymbolKind,
    SymbolSpec,
    unit_ratio_fiducial,
    verify_d,
    verify_p,
    verify_p2,
    verify_q_power,
)
from acs.specfun import FloatArray
from acs.su11 import (
    SU11Matrix,
    algebra_rep,
    algebra_residuals,
    cartan,
    factor_matrices,
    rep_matrix,
    v_matrix,
)
from config import Settings

RUN_LOG = 'run.log'
MANIFEST = 'manifest.json'
UNIT_THRESHOLD = 1e-12
REASSEMBLY_THRESHOLD = 1e-13
ALGEBRA_THRESHOLD = 1e-10


class AcsGroup(click.Group):
    """Command group whose usage errors exit with the invalid-input code."""

    def make_context(
        self,
        info_name: str | None,
        args: list[str],
        parent: click.Context | None = None,
        **extra: Any,  # noqa: ANN401
    ) -> click.Context:
        """Parse the group options.

        Args:
            info_name (str | None): Program name
            args (list[str]): Command-line arguments
            parent (click.Context | None): Parent context
            **extra: Context settings

        Returns:
            click.Context: The group context
        """
        try:
            return super().make_context(info_name, args, parent, **extra)
        except click.UsageError as error:
            error.exit_code = ExitCode.INVALID_INPUT
            raise

    def invoke(self, ctx: click.Context) -> Any:  # noqa: ANN401
        """Run the selected subcommand.

        Args:
            ctx (click.Context): The group context

        Returns:
            Any: The subcommand result
        """
        try:
            return super().invoke(ctx)
        except click.UsageError as error:
            error.exit_code = ExitCode.INVALID_INPUT
            raise


class RunContext:
    """Output directory, log sink and collected results of one run."""

    def __init__(
        self,
        command: str,
        settings: Settings,
        parameters: dict[str, object],
    ) -> None:
        """Create the run directory and attach the JSON log.

        Args:
            command (str): Subcommand name
            settings (Settings): Resolved settings
            parameters (dict[str, object]): Flags of the run
        """
        self.command = command
        self.settings = settings
        self.parameters = parameters
        self.started = datetime.now(timezone.utc)
        self.run_id = f'{command}-{self.started:%Y%m%dT%H%M%S%fZ}'
        self.directory = settings.output_dir / self.run_id
        self.directory.mkdir(parents=True, exist_ok=False)
        self.files: list[str] = []
        self.checks: list[Check] = []
        self.results: dict[str, object] = {}
        self.notes: list[str] = []
        self._clock = time.perf_counter()
        self._handler = add_run_log(self.directory / RUN_LOG)
        logger.info(f'Run {self.run_id} started with {parameters}')

    def _register(self, path: Path) -> Path:
        self.files.append(path.name)
        logger.debug(f'Wrote {path}')
        return path

    def write_csv(
        self,
        name: str,
        header: list[str],
        rows: FloatArray,
    ) -> Path:
        """Write a CSV file into the run directory.

        Args:
            name (str): File name
            header (list[str]): Column names
            rows (FloatArray): Table rows

        Returns:
            Path: The written file
        """
        return self._register(write_csv(self.directory / name, header, rows))

    def write_json(self, name: str, payload: dict[str, object]) -> Path:
        """Write a JSON report into the run directory.

        Args:
            name (str): File name
            payload (dict[str, object]): Report contents

        Returns:
            Path: The written file
        """
        return self._register(write_json(self.directory / name, payload))

    def write_grid(self, grid: GridData) -> Path:
        """Write one figure panel as ``<figure>_<panel>.csv``.

        Args:
            grid (GridData): The panel

        Returns:
            Path: The written file
        """
        return self.write_csv(
            f'{grid.figure}_{grid.panel}.csv',
            grid.header,
            grid.rows(),
        )

    def check(self, name: str, value: float, threshold: float) -> Check:
        """Record a residual against its threshold.

        Args:
            name (str): Check name
            value (float): Measured residual
            threshold (float): Acceptance threshold

        Returns:
            Check: The recorded check
        """
        result = Check(name, float(value), threshold)
        self.checks.append(result)
        if not result.passed:
            logger.warning(f'Check {name} failed: {value:.3e} >= {threshold}')
        return result

    @property
    def failed(self) -> list[Check]:
        """Checks above their threshold."""
        return [check for check in self.checks if not check.passed]

    def close(
        self,
        exit_code: int,
        failure: dict[str, object] | None = None,
    ) -> RunManifest:
        """Detach the log and write the manifest.

        Args:
            exit_code (int): Process exit code
            failure (dict[str, object] | None): Failure reason

        Returns:
            RunManifest: The written manifest
        """
        logger.info(f'Run {self.run_id} finished with exit code {exit_code}')
        remove_run_log(self._handler)
        manifest = RunManifest(
            run_id=self.run_id,
            command=self.command,
            parameters=self.parameters,
            settings=self.settings.to_dict(),
            version=__version__,
            started=self.started.isoformat(),
            wall_clock=time.perf_counter() - self._clock,
            files=tuple(self.files),
            checks=tuple(self.checks),
            results=self.results,
            exit_code=exit_code,
            failure=failure,
            notes=tuple(self.notes),
            log=RUN_LOG,
        )
        write_json(self.directory / MANIFEST, manifest.to_dict())
        return manifest


def _threshold_failure(checks: list[Check]) -> dict[str, object]:
    names = ', '.join(check.name for check in checks)
    return {
        'reason': 'threshold_exceeded',
        'message': f'Checks above threshold: {names}',
        'details': {check.name: check.value for check in checks},
    }


def run_command(body: Callable[..., None]) -> Callable[..., ExitCode]:
    """Run a subcommand body inside a :class:`RunContext`.

    The wrapped callable receives the settings first, as passed by
    ``click.pass_obj``, and every flag as a keyword.

    Args:
        body (Callable): Function taking the run context and the flags

    Returns:
        Callable: The command callback
    """

    @wraps(body)
    def wrapper(
        settings: Settings,
        **parameters: Any,  # noqa: ANN401
    ) -> ExitCode:
        command = click.get_current_context().info_name or body.__name__
        run = RunContext(command, settings, parameters)
        try:
            body(run, **parameters)
        except AcsError as error:
            logger.warning(f'{command} failed: {error.message}')
            click.echo(f'Error: {error.message}', err=True)
            run.close(error.exit_code, error.to_dict())
            raise click.exceptions.Exit(error.exit_code) from error
        except Exception as error:
            logger.exception(f'{command} failed unexpectedly')
            run.close(
                ExitCode.INTERNAL_ERROR,
                {'reason': 'internal_error', 'message': str(error)},
            )
            raise

        failed = run.failed
        exit_code = ExitCode.NON_CONVERGENCE if failed else ExitCode.SUCCESS
        manifest = run.close(
            exit_code,
            _threshold_failure(failed) if failed else None,
        )
        click.echo(f'{manifest.run_id}: {manifest.status}')
        if failed:
            click.echo(f'Error: {manifest.failure}', err=True)
            raise click.exceptions.Exit(exit_code)
        return exit_code

    return wrapper


def parse_levels(text: str) -> tuple[int, ...]:
    """Read ``--n`` of the fiducial command.

    Args:
        text (str): Comma-separated levels

    Returns:
        tuple[int, ...]: The levels

    Raises:
        ParameterError: If the list is malformed
    """
    levels, error = parse_level_list(text)
    if levels is None:
        raise ParameterError(str(error))
    return levels


def parse_times(text: str) -> tuple[float, ...]:
    """Read ``--times`` of the evolve command.

    Args:
        text (str): Comma-separated times

    Returns:
        tuple[float, ...]: The times

    Raises:
        ParameterError: If the list is malformed
    """
    times, error = parse_float_list(text, 'Times')
    if times is None:
        raise ParameterError(str(error))
    return times


def fiducial_reports(
    run: RunContext,
    nu: float,
    levels: Sequence[int],
) -> None:
    """Moment tables and constraint residuals of several levels.

    Args:
        run (RunContext): The run
        nu (float): Repulsion index
        levels (Sequence[int]): Excitation levels
    """
    threshold = run.settings.constraint_threshold
    for n in levels:
        spec = make_spec(nu, n)
        report = moment_report(spec, threshold=threshold)
        residual = eigen_residual(spec)
        payload = report.to_dict() | {'eigen_residual': residual}
        run.write_json(f'fiducial_n{n}.json', payload)
        run.check(
            f'constraints_n{n}',
            max(report.constraints.residuals.values()),
            threshold,
        )
        run.check(f'eigen_residual_n{n}', residual, threshold)
        run.results[f'n{n}'] = {
            'xi_star': report.xi_star,
            'omega_tilde': report.omega_tilde,
        }


def figure_data(run: RunContext, figure: str) -> None:
    """Write the panels, curves and checks of one figure.

    Args:
        run (RunContext): The run
        figure (str): ``'fig1'``, ``'fig2'`` or ``'fig3'``
    """
    data = FIGURES[figure](run.settings)
    for panel in data.panels:
        run.write_grid(panel)
    for stem, (header, rows) in data.curves.items():
        run.write_csv(f'{figure}_{stem}.csv', header, rows)
    run.checks.extend(data.checks)
    run.results.update(data.summary)
    run.results['panels'] = [panel.to_dict() for panel in data.panels]
    run.notes.extend(data.notes)


def evolution(
    run: RunContext,
    nu: float,
    n: int,
    point: PhasePoint,
    times: Sequence[float],
    size: int,
) -> None:
    """Fidelity of parametric evolution with the trajectory it follows.

    Args:
        run (RunContext): The run
        nu (float): Repulsion index
        n (int): Fiducial level
        point (PhasePoint): Initial label
        times (Sequence[float]): Times to check
        size (int): Truncation N

    Raises:
        ParameterError: If the basis is too small
    """
    is_valid, error = validate_evolve_size(size)
    if not is_valid:
        raise ParameterError(str(error))
    settings = run.settings
    report = fidelity_report(
        nu,
        n,
        point,
        times,
        size,
        deficit_threshold=settings.deficit_threshold,
        stability_threshold=settings.stability_threshold,
    )
    columns = [
        't',
        're_f',
        'im_f',
        'abs_f_minus_1',
        'deficit',
        'delta',
        'energy_drift',
        'q',
        'p',
    ]
    rows = np.array(
        [[row.to_dict()[name] for name in columns] for row in report.rows],
        dtype=np.float64,
    )
    run.write_csv('fidelity.csv', columns, rows)

    turn = bounce(point, nu, n)
    path = sample_trajectory(point, times, nu, n, turn.time)
    run.write_csv(
        'trajectory.csv',
        ['t', 'q', 'p', 'phase'],
        np.asarray(path.rows(), dtype=np.float64),
    )

    run.check('fidelity', report.max_error, settings.fidelity_threshold)
    run.check(
        'truncation_deficit',
        max(row.deficit for row in report.rows),
        settings.deficit_threshold,
    )
    run.check(
        'stability_delta',
        max(row.delta for row in report.rows),
        settings.stability_threshold,
    )
    if path.times[0] <= turn.time <= path.times[-1]:
        run.check(
            'trajectory_q_min',
            abs(path.q_min - turn.q_min) / turn.q_min,
            settings.constraint_threshold,
        )
    else:
        run.notes.append('The bounce lies outside the requested times.')
    run.results.update(
        {
            'basis': report.basis.to_dict(),
            'max_error': report.max_error,
            'converged': report.converged,
            'bounce': turn.to_dict(),
            'trajectory_q_min': path.q_min,
        },
    )


def _quantization_fiducial(
    choice: str,
    nu: float,
    n: int,
) -> FiducialSpec | GridFiducial:
    if choice == 'phi0':
        return make_spec(nu, n)
    grid = GridFiducial.rapidly_decreasing()
    if choice == 'grid-unit':
        return unit_ratio_fiducial(grid)
    return grid


def quantization(
    run: RunContext,
    text: str,
    choice: str,
    nu: float,
    n: int,
    size: int,
    tol: float,
) -> None:
    """Measured quantization of one symbol against its closed form.

    Args:
        run (RunContext): The run
        text (str): Symbol such as ``'q^2'``
        choice (str): ``'phi0'``, ``'grid'`` or ``'grid-unit'``
        nu (float): Repulsion index of an oscillator fiducial
        n (int): Level of an oscillator fiducial
        size (int): Number of basis functions
        tol (float): Tolerance of the phase-space quadrature
    """
    symbol = SymbolSpec.parse(text)
    fiducial = _quantization_fiducial(choice, nu, n)
    basis = BasisSpec(DEFAULT_BASIS.nu, DEFAULT_BASIS.xi_ref, size)
    settings = run.settings

    if symbol.kind is SymbolKind.P_SQUARED:
        fit = verify_p2(fiducial, basis, tol)
        run.write_json('quantize.json', fit.to_dict())
        run.check('kinetic_error', fit.kinetic_error, settings.fit_threshold)
        run.check(
            'repulsive_error',
            fit.repulsive_error,
            settings.fit_threshold,
        )
        run.results.update(
            {'kinetic': fit.kinetic, 'repulsive': fit.repulsive},
        )
        return

    verify = {
        SymbolKind.P_LINEAR: verify_p,
        SymbolKind.D_SYMBOL: verify_d,
    }.get(symbol.kind)
    if verify is None:
        report = verify_q_power(symbol.alpha, fiducial, basis, tol)
    else:
        report = verify(fiducial, basis, tol)
    run.write_json('quantize.json', report.to_dict())
    run.check('ratio_error', report.error, settings.identity_threshold)
    run.check('residual', report.residual, settings.identity_threshold)
    run.results.update(
        {
            'symbol': symbol.label,
            'measured': report.measured,
            'predicted': report.predicted,
        },
    )


def _relative(m: SU11Matrix, reference: SU11Matrix) -> float:
    return m.distance(reference) / max(1.0, abs(reference.alpha))


def su11_report(
    run: RunContext,
    q: float,
    p: float,
    nu: float,
    size: int,
) -> None:
    """Matrix of ``V_(q,p)``, its factorizations and the algebra checks.

    Args:
        run (RunContext): The run
        q (float): Position label
        p (float): Momentum label
        nu (float): Repulsion index of the algebra representation
        size (int): Truncation of the algebra representation
    """
    m = v_matrix(q, p)
    translation, dilation = factor_matrices(q, p)
    left = cartan(m, 'left')
    right = cartan(m, 'right')
    rep = algebra_rep(nu, size)
    residuals = algebra_residuals(rep)
    run.write_json(
        'su11.json',
        {
            'matrix': m.to_dict(),
            'factors': {
                'translation': translation.to_dict(),
                'dilation': dilation.to_dict(),
            },
            'cartan_left': left.to_dict(),
            'cartan_right': right.to_dict(),
            'algebra': rep.to_dict() | {'residuals': residuals},
        },
    )
    run.check('unit_defect', abs(m.unit_defect), UNIT_THRESHOLD)
    run.check(
        'factor_product',
        _relative(translation @ dilation, m),
        UNIT_THRESHOLD,
    )
    run.check(
        'reparametrized_rep',
        _relative(rep_matrix(1.0 / q, p / q**2), m),
        UNIT_THRESHOLD,
    )
    run.check(
        'reassembly_left',
        _relative(left.reassemble(), m),
        REASSEMBLY_THRESHOLD,
    )
    run.check(
        'reassembly_right',
        _relative(right.reassemble(), m),
        REASSEMBLY_THRESHOLD,
    )
    run.check('algebra', max(residuals.values()), ALGEBRA_THRESHOLD)
    run.results.update(
        {
            'alpha': [m.alpha.real, m.alpha.imag],
            'beta': [m.beta.real, m.beta.imag],
        },
    )


def identity_report(run: RunContext, nu: float, n: int, tol: float) -> None:
    """Resolution of the identity on four oscillator levels.

    Args:
        run (RunContext): The run
        nu (float): Repulsion index
        n (int): Fiducial level
        tol (float): Tolerance of the phase-space quadrature

    Raises:
        ConvergenceError: If the phase-space integral misses its tolerance
    """
    threshold = run.settings.identity_threshold
    report = identity_check(nu, n, tol=tol, threshold=threshold)
    run.write_json('identity.json', report.to_dict())
    i, j = np.indices(report.residuals.shape)
    run.write_csv(
        'residuals.csv',
        ['i', 'j', 'residual', 're_gram', 'im_gram'],
        np.column_stack(
            [
                i.ravel(),
                j.ravel(),
                report.residuals.ravel(),
                report.gram.real.ravel(),
                report.gram.imag.ravel(),
            ],
        ),
    )
    if not report.integration.converged:
        msg = 'Phase-space integration missed its tolerance'
        raise ConvergenceError(msg, report.integration.to_dict())
    run.check('max_residual', report.max_residual, threshold)
    run.results.update(
        {
            'max_residual': report.max_residual,
            'budget': report.integration.budget,
        },
    )
