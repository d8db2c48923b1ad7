"""Command-line entry point.

Run this file, or the installed ``acs`` script, to use the subcommands.
"""

from acs.cli import cli

if __name__ == '__main__':
    cli()
