"""Configure library-wide logging using Loguru.

This module integrates Python's standard logging and warnings with Loguru
to provide colorized console output and, per CLI run, a structured JSON
log file next to the run's data.
"""

import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from loguru import logger

if TYPE_CHECKING:
    from loguru import Record

LOG_FORMAT = (
    '<green>{time:YYYY-MM-DD HH:mm:ss}</green> | '
    '<level>{level: <8}</level> | '
    '<cyan>{extra[module]}</cyan> | '
    '<level>{message}</level>'
)


class InterceptHandler(logging.Handler):
    """A logging handler that redirects standard logging records to Loguru.

    scipy and numpy report through ``logging`` and ``warnings``; both end
    up here once :func:`setup_logging` has run.
    """

    def emit(self, record: logging.LogRecord) -> None:
        """Redirect a standard logging record to Loguru.

        Args:
            record (logging.LogRecord): The log record to be processed.
        """
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelname

        logger.opt(
            depth=6,
            exception=record.exc_info,
        ).bind(module=record.name).log(level, record.getMessage())


def _default_module(record: 'Record') -> None:
    record['extra'].setdefault('module', record['name'] or 'acs')


def _stderr_sink(message: str) -> None:
    sys.stderr.write(message)


def setup_logging(level: str = 'INFO') -> None:
    """Configure Loguru and standard logging to work together.

    Args:
        level (str): Minimum level of the console sink.
    """
    logger.remove()
    logger.configure(patcher=_default_module)

    logger.add(
        _stderr_sink,
        colorize=sys.stderr.isatty(),
        format=LOG_FORMAT,
        level=level,
        enqueue=True,
    )

    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    logging.captureWarnings(capture=True)


def add_run_log(path: Path, level: str = 'DEBUG') -> int:
    """Attach a serialized JSON sink for one run.

    Args:
        path (Path): Log file to create.
        level (str): Minimum level written to the file.

    Returns:
        int: Loguru handler id, to be passed to :func:`remove_run_log`.
    """
    return logger.add(path, serialize=True, level=level, encoding='utf-8')


def remove_run_log(handler_id: int) -> None:
    """Detach a sink created by :func:`add_run_log`.

    Args:
        handler_id (int): Id returned by :func:`add_run_log`.
    """
    logger.remove(handler_id)
