"""Run configuration settings.

This module defines configuration classes for the different run
environments and the loader that turns one of them, an optional JSON
override file and the environment into a frozen :class:`Settings`.
"""

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()
basedir = Path(__file__).resolve().parent

OUTPUT_DIR_VARIABLE = 'ACS_OUTPUT_DIR'
ENVIRONMENT_VARIABLE = 'ACS_ENV'


class Config:
    """Base configuration class with common settings."""

    OUTPUT_DIR = str(basedir / 'runs')
    LOG_LEVEL = 'INFO'
    QUAD_ABS_TOL = 1e-12
    QUAD_REL_TOL = 1e-10
    QUAD_MAX_DEPTH = 40
    BASIS_SIZE = 256
    DEFICIT_THRESHOLD = 1e-8
    STABILITY_THRESHOLD = 1e-6
    FIDELITY_THRESHOLD = 1e-5
    CONSTRAINT_THRESHOLD = 1e-8
    PHASE_SPACE_TOL = 1e-6
    IDENTITY_THRESHOLD = 1e-3
    FIT_THRESHOLD = 1e-2
    GRID_Q_MIN = 0.05
    GRID_Q_MAX = 10.0
    GRID_P_MIN = -10.0
    GRID_P_MAX = 10.0
    GRID_COUNT = 200


class DevelopmentConfig(Config):
    """Development environment configuration."""

    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production environment configuration."""

    LOG_LEVEL = 'INFO'


class TestingConfig(Config):
    """Testing environment configuration."""

    LOG_LEVEL = 'WARNING'
    BASIS_SIZE = 64
    GRID_COUNT = 100


config: dict[str, type[Config]] = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig,
}


@dataclass(frozen=True)
class Settings:
    """Resolved settings consumed by the library and the CLI.

    Attributes:
        output_dir (Path): Root directory of run folders.
        log_level (str): Minimum level of the console sink.
        quad_abs_tol (float): Absolute tolerance of adaptive quadrature.
        quad_rel_tol (float): Relative tolerance of adaptive quadrature.
        quad_max_depth (int): Bisection depth of adaptive quadrature.
        basis_size (int): Default truncation of the Laguerre basis.
        deficit_threshold (float): Largest accepted truncation deficit.
        stability_threshold (float): Largest accepted N-vs-2N change.
        fidelity_threshold (float): Largest accepted ``|F - 1|``.
        constraint_threshold (float): Largest accepted constraint residual.
        phase_space_tol (float): Tolerance of phase-space integrations.
        identity_threshold (float): Largest accepted Gram residual.
        fit_threshold (float): Largest accepted error of the p^2 fit.
        grid_q_min (float): Lower q edge of figure grids.
        grid_q_max (float): Upper q edge of figure grids.
        grid_p_min (float): Lower p edge of figure grids.
        grid_p_max (float): Upper p edge of figure grids.
        grid_count (int): Points per figure axis.
    """

    output_dir: Path
    log_level: str
    quad_abs_tol: float
    quad_rel_tol: float
    quad_max_depth: int
    basis_size: int
    deficit_threshold: float
    stability_threshold: float
    fidelity_threshold: float
    constraint_threshold: float
    phase_space_tol: float
    identity_threshold: float
    fit_threshold: float
    grid_q_min: float
    grid_q_max: float
    grid_p_min: float
    grid_p_max: float
    grid_count: int

    def to_dict(self) -> dict[str, object]:
        """Convert settings to a JSON-ready dictionary.

        Returns:
            dict: Settings keyed by field name
        """
        result: dict[str, object] = {
            item.name: getattr(self, item.name) for item in fields(self)
        }
        result['output_dir'] = str(self.output_dir)
        return result


def _from_class(config_class: type[Config]) -> Settings:
    values: dict[str, object] = {
        item.name: getattr(config_class, item.name.upper())
        for item in fields(Settings)
    }
    values['output_dir'] = Path(str(values['output_dir']))
    return Settings(**values)  # type: ignore[arg-type]


def _apply_overrides(
    settings: Settings,
    overrides: dict[str, object],
) -> Settings:
    known = {item.name: item for item in fields(Settings)}
    changes: dict[str, object] = {}
    for key, value in overrides.items():
        if key not in known or key in {'output_dir', 'log_level'}:
            msg = f"Config key '{key}' is not a numeric setting"
            raise ValueError(msg)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            msg = f"Config key '{key}' must be a number"
            raise ValueError(msg)
        current = getattr(settings, key)
        changes[key] = int(value) if isinstance(current, int) else value
    return replace(settings, **changes)  # type: ignore[arg-type]


def load_settings(
    config_name: str | None = None,
    config_file: Path | None = None,
    output_dir: Path | None = None,
) -> Settings:
    """Build the settings for a run.

    Precedence, lowest first: configuration class, JSON file (numeric
    keys only), ``ACS_OUTPUT_DIR``, explicit ``output_dir``.

    Args:
        config_name (str | None): Key of :data:`config`; ``ACS_ENV`` or
            ``'default'`` when omitted
        config_file (Path | None): Optional JSON file with overrides
        output_dir (Path | None): Explicit output directory

    Returns:
        Settings: The resolved settings

    Raises:
        ValueError: If the name is unknown or the file is malformed
    """
    name = config_name or os.getenv(ENVIRONMENT_VARIABLE, 'default')
    if name not in config:
        msg = f"Unknown configuration '{name}'"
        raise ValueError(msg)
    settings = _from_class(config[name])

    if config_file is not None:
        overrides = json.loads(config_file.read_text(encoding='utf-8'))
        if not isinstance(overrides, dict):
            msg = 'Config file must hold a JSON object'
            raise ValueError(msg)  # noqa: TRY004
        settings = _apply_overrides(settings, overrides)

    env_output = os.getenv(OUTPUT_DIR_VARIABLE)
    if env_output:
        settings = replace(settings, output_dir=Path(env_output))
    if output_dir is not None:
        settings = replace(settings, output_dir=output_dir)
    return settings
