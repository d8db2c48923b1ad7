"""Grids, checks and manifests produced by command-line runs."""

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from acs.cli.validators import validate_grid_shape, validate_grid_values
from acs.errors import ParameterError, QuadratureError
from acs.specfun import FloatArray

Scale = Literal['linear', 'log']


@dataclass(frozen=True)
class Axis:
    """A sampled coordinate axis.

    Attributes:
        name (str): Coordinate name, also the CSV column
        minimum (float): First point
        maximum (float): Last point
        count (int): Number of points
        scale (Scale): Linear or logarithmic spacing
    """

    name: str
    minimum: float
    maximum: float
    count: int
    scale: Scale = 'linear'

    @property
    def values(self) -> FloatArray:
        """The sample points."""
        if self.scale == 'log':
            return np.geomspace(self.minimum, self.maximum, self.count)
        return np.linspace(self.minimum, self.maximum, self.count)

    @property
    def step(self) -> float:
        """Spacing of a linear axis."""
        return (self.maximum - self.minimum) / (self.count - 1)

    def to_dict(self) -> dict[str, object]:
        """Convert the axis to a dictionary.

        Returns:
            dict: Name, range, count and scale
        """
        return {
            'name': self.name,
            'min': self.minimum,
            'max': self.maximum,
            'count': self.count,
            'scale': self.scale,
        }


@dataclass(frozen=True, eq=False)
class GridData:
    """Values of one figure panel on a tensor grid.

    Attributes:
        figure (str): Figure id
        panel (str): Panel name, also the CSV file stem
        axes (tuple[Axis, ...]): Axes in row-major order
        values (FloatArray): One value per grid node
        quantity (str): Name of the value column
        metadata (dict[str, object]): Caption parameters of the panel
    """

    figure: str
    panel: str
    axes: tuple[Axis, ...]
    values: FloatArray
    quantity: str
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check shape and finiteness.

        Raises:
            ParameterError: If the shape does not match the axes
            QuadratureError: If a value is NaN or infinite
        """
        counts = tuple(axis.count for axis in self.axes)
        is_valid, error = validate_grid_shape(counts, self.values)
        if not is_valid:
            raise ParameterError(str(error))
        is_valid, error = validate_grid_values(self.values)
        if not is_valid:
            raise QuadratureError(str(error), {'panel': self.panel})

    @property
    def header(self) -> list[str]:
        """CSV columns: the axes, then the quantity."""
        return [axis.name for axis in self.axes] + [self.quantity]

    def rows(self) -> FloatArray:
        """Nodes and values, one row per node in row-major order."""
        mesh = np.meshgrid(*(axis.values for axis in self.axes), indexing='ij')
        columns = [coordinate.ravel() for coordinate in mesh]
        return np.column_stack([*columns, self.values.ravel()])

    def to_dict(self) -> dict[str, object]:
        """Describe the grid for the manifest.

        Returns:
            dict: Figure, panel, axes, quantity and caption parameters
        """
        return {
            'figure': self.figure,
            'panel': self.panel,
            'axes': [axis.to_dict() for axis in self.axes],
            'quantity': self.quantity,
            'metadata': self.metadata,
        }


@dataclass(frozen=True)
class Check:
    """A measured residual against its acceptance threshold.

    Attributes:
        name (str): Check name
        value (float): Measured residual
        threshold (float): The check passes below this value
    """

    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        """Whether the residual is below the threshold."""
        return self.value < self.threshold

    def to_dict(self) -> dict[str, object]:
        """Convert the check to a dictionary.

        Returns:
            dict: Name, value, threshold and verdict
        """
        return {
            'name': self.name,
            'value': self.value,
            'threshold': self.threshold,
            'passed': self.passed,
        }


@dataclass(frozen=True)
class FigureData:
    """Everything one figure command emits.

    Attributes:
        figure (str): Figure id
        panels (tuple[GridData, ...]): One grid per panel
        checks (tuple[Check, ...]): Acceptance checks of the figure
        curves (dict[str, tuple[list[str], FloatArray]]): Extra tables
            such as the trajectory polyline, by file stem
        summary (dict[str, object]): Values recorded in the manifest
        notes (tuple[str, ...]): Choices the captions leave open
    """

    figure: str
    panels: tuple[GridData, ...]
    checks: tuple[Check, ...]
    curves: dict[str, tuple[list[str], FloatArray]] = field(
        default_factory=dict,
    )
    summary: dict[str, object] = field(default_factory=dict)
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RunManifest:
    """Record of one command-line run.

    Attributes:
        run_id (str): Directory name of the run
        command (str): Subcommand
        parameters (dict[str, object]): Every flag of the run
        settings (dict[str, object]): Resolved settings
        version (str): Library version
        started (str): UTC start time, ISO 8601
        wall_clock (float): Elapsed seconds
        files (tuple[str, ...]): Data files written by the run
        checks (tuple[Check, ...]): Residuals against thresholds
        results (dict[str, object]): Command-specific values
        exit_code (int): Process exit code
        failure (dict[str, object] | None): Reason of a nonzero exit
        notes (tuple[str, ...]): Recorded choices and caveats
        log (str): Name of the JSON log file
    """

    run_id: str
    command: str
    parameters: dict[str, object]
    settings: dict[str, object]
    version: str
    started: str
    wall_clock: float
    files: tuple[str, ...]
    checks: tuple[Check, ...]
    results: dict[str, object]
    exit_code: int
    failure: dict[str, object] | None = None
    notes: tuple[str, ...] = ()
    log: str = 'run.log'

    @property
    def status(self) -> str:
        """``'succeeded'`` or ``'failed'``."""
        return 'succeeded' if self.exit_code == 0 else 'failed'

    def to_dict(self) -> dict[str, object]:
        """Convert the manifest to a JSON-ready dictionary.

        Returns:
            dict: Manifest contents
        """
        return {
            'run_id': self.run_id,
            'command': self.command,
            'status': self.status,
            'exit_code': self.exit_code,
            'failure': self.failure,
            'version': self.version,
            'started': self.started,
            'wall_clock': self.wall_clock,
            'parameters': self.parameters,
            'settings': self.settings,
            'checks': [check.to_dict() for check in self.checks],
            'results': self.results,
            'files': list(self.files),
            'log': self.log,
            'notes': list(self.notes),
        }
