"""Command-line interface.

Each subcommand writes a run directory ``<out>/<command>-<UTC time>/``
holding its data files, ``run.log`` and ``manifest.json``.

Exit codes:
    0: Success, every check below its threshold
    1: Invalid input
    2: Numerical non-convergence or a check above its threshold
"""

from pathlib import Path

import click

from acs import __version__, configure
from acs.cli.services import (
    AcsGroup,
    RunContext,
    evolution,
    fiducial_reports,
    figure_data,
    identity_report,
    parse_levels,
    parse_times,
    quantization,
    run_command,
    su11_report,
)
from acs.cli.validators import FIDUCIAL_CHOICES, FIGURE_IDS
from acs.dynamics import PhasePoint
from config import config

DEFAULT_TIMES = '0,0.25,0.6036,1.0,1.5,2.0'


@click.group(cls=AcsGroup)
@click.option(
    '--env',
    'config_name',
    type=click.Choice(sorted(config)),
    default=None,
    help='Configuration class; ACS_ENV or development by default.',
)
@click.option(
    '--config',
    'config_file',
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help='JSON file overriding numeric settings.',
)
@click.option(
    '--out',
    'output_dir',
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help='Root directory of run folders; overrides ACS_OUTPUT_DIR.',
)
@click.version_option(__version__, prog_name='acs')
@click.pass_context
def cli(
    ctx: click.Context,
    config_name: str | None,
    config_file: Path | None,
    output_dir: Path | None,
) -> None:
    """Affine coherent states: checks and figure data."""
    try:
        ctx.obj = configure(config_name, config_file, output_dir)
    except ValueError as error:
        raise click.BadParameter(str(error), param_hint='--config') from error


@cli.command('fiducial')
@click.option('--nu', type=float, required=True, help='Repulsion index.')
@click.option(
    '--n',
    'levels',
    required=True,
    help='Comma-separated levels, for example 0,1,2.',
)
@click.pass_obj
@run_command
def fiducial(run: RunContext, nu: float, levels: str) -> None:
    """Moments, scales and constraint residuals of Phi_n.

    Example:
        acs fiducial --nu 3 --n 0,1,2
    """
    fiducial_reports(run, nu, parse_levels(levels))


@cli.command('figures')
@click.argument('figure', type=click.Choice(FIGURE_IDS))
@click.pass_obj
@run_command
def figures(run: RunContext, figure: str) -> None:
    """Grid data of one figure, one CSV per panel.

    Example:
        acs figures fig2
    """
    figure_data(run, figure)


@cli.command('evolve')
@click.option('--nu', type=float, default=3.0, show_default=True)
@click.option('--n', type=int, default=0, show_default=True)
@click.option('--q0', type=float, default=5.0, show_default=True)
@click.option('--p0', type=float, default=-4.0, show_default=True)
@click.option(
    '--times',
    default=DEFAULT_TIMES,
    show_default=True,
    help='Comma-separated times.',
)
@click.option(
    '--size',
    type=click.IntRange(min=1),
    default=None,
    help='Basis truncation N; the configured size by default.',
)
@click.pass_obj
@run_command
def evolve(
    run: RunContext,
    nu: float,
    n: int,
    q0: float,
    p0: float,
    times: str,
    size: int | None,
) -> None:
    """Fidelity of exp(-iHt)|q0,p0> against the evolved label.

    Example:
        acs evolve --nu 3 --n 0 --q0 5 --p0 -4 --size 256
    """
    truncation = size if size is not None else run.settings.basis_size
    run.results['size'] = truncation
    evolution(run, nu, n, PhasePoint(q0, p0), parse_times(times), truncation)


@cli.command('quantize')
@click.option(
    '--symbol',
    required=True,
    help="Symbol: q^a, 1, p, qp or p^2, for example 'q^2'.",
)
@click.option(
    '--fiducial',
    'choice',
    type=click.Choice(FIDUCIAL_CHOICES),
    default='phi0',
    show_default=True,
    help='Oscillator Phi_n, the sampled test fiducial or its c1=c0 dilation.',
)
@click.option('--nu', type=float, default=3.0, show_default=True)
@click.option('--n', type=int, default=0, show_default=True)
@click.option(
    '--size', type=click.IntRange(min=1), default=8, show_default=True
)
@click.option(
    '--tol',
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help='Phase-space tolerance; the configured one by default.',
)
@click.pass_obj
@run_command
def quantize(
    run: RunContext,
    symbol: str,
    choice: str,
    nu: float,
    n: int,
    size: int,
    tol: float | None,
) -> None:
    """Quantized symbol measured against its closed form.

    Example:
        acs quantize --symbol q^2 --fiducial phi0 --nu 6
    """
    tolerance = tol if tol is not None else run.settings.phase_space_tol
    run.results['tol'] = tolerance
    quantization(run, symbol, choice, nu, n, size, tolerance)


@cli.command('su11')
@click.option('--q', type=float, required=True, help='Position label.')
@click.option('--p', type=float, required=True, help='Momentum label.')
@click.option('--nu', type=float, default=3.0, show_default=True)
@click.option(
    '--size', type=click.IntRange(min=1), default=24, show_default=True
)
@click.pass_obj
@run_command
def su11(run: RunContext, q: float, p: float, nu: float, size: int) -> None:
    """SU(1,1) matrix of V_(q,p), Cartan factors and algebra checks.

    Example:
        acs su11 --q 2 --p 1
    """
    su11_report(run, q, p, nu, size)


@cli.command('identity')
@click.option('--nu', type=float, required=True, help='Repulsion index.')
@click.option('--n', type=int, required=True, help='Fiducial level.')
@click.option(
    '--tol',
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help='Phase-space tolerance; the configured one by default.',
)
@click.pass_obj
@run_command
def identity(run: RunContext, nu: float, n: int, tol: float | None) -> None:
    """Resolution of the identity on four oscillator levels.

    Example:
        acs identity --nu 3 --n 0
    """
    tolerance = tol if tol is not None else run.settings.phase_space_tol
    run.results['tol'] = tolerance
    identity_report(run, nu, n, tolerance)
