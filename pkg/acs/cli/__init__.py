"""Command-line front end: figure data, validation reports and manifests.

Defines the ``acs`` click group and wires the subcommands.
"""

from acs.cli.commands import cli
from acs.cli.models import Axis, Check, FigureData, GridData, RunManifest
from acs.cli.services import AcsGroup, RunContext, run_command
