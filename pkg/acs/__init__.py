"""Affine coherent states on the half-line.

This package constructs the coherent states generated by the radial
oscillator eigenvectors, checks their dynamical and quantization
properties numerically and produces the data behind the figures.

Modules:
    specfun: Log-gamma, Laguerre polynomials and quadrature rules.
    fiducial: Fiducial vectors, moments and consistency constraints.
    coherent: Coherent-state wavefunctions, overlaps and densities.
    dynamics: Semiclassical flow and dynamical phase.
    propagator: Spectral Galerkin solution of the Schrodinger equation.
    quantizer: Covariant integral quantization by phase-space quadrature.
    su11: SU(1,1) matrices, Cartan factorization and generators.
    cli: Command-line front end and run manifests.
"""

from pathlib import Path

from loguru import logger

from acs.logging_config import setup_logging
from config import Settings, load_settings

__version__ = '0.1.0'


def configure(
    config_name: str | None = None,
    config_file: Path | None = None,
    output_dir: Path | None = None,
) -> Settings:
    """Load settings and configure logging for a session.

    Args:
        config_name (str | None): Configuration class key
        config_file (Path | None): Optional JSON override file
        output_dir (Path | None): Explicit output directory

    Returns:
        Settings: The resolved settings
    """
    settings = load_settings(config_name, config_file, output_dir)
    setup_logging(settings.log_level)
    logger.debug(f'Settings loaded: {settings.to_dict()}')
    return settings
