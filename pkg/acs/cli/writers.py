"""Flat-file writers of run directories.

Every writer opens its target in exclusive mode, so an existing file is
never overwritten. CSV files carry a header row, comma separators, LF
line endings and 17 significant digits.
"""

import json
from pathlib import Path

import numpy as np
import numpy.typing as npt

CSV_FORMAT = '%.17g'


def _json_default(value: object) -> object:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    msg = f'{type(value).__name__} is not JSON serializable'
    raise TypeError(msg)


def write_csv(
    path: Path,
    header: list[str],
    rows: npt.NDArray[np.float64],
) -> Path:
    """Write a numeric table.

    Args:
        path (Path): File to create
        header (list[str]): Column names
        rows (NDArray): Two-dimensional table, one row per record

    Returns:
        Path: The written file

    Raises:
        FileExistsError: If the file exists
    """
    table = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    with path.open('x', encoding='utf-8', newline='\n') as handle:
        np.savetxt(
            handle,
            table,
            fmt=CSV_FORMAT,
            delimiter=',',
            header=','.join(header),
            comments='',
        )
    return path


def write_json(path: Path, payload: dict[str, object]) -> Path:
    """Write a JSON document.

    Args:
        path (Path): File to create
        payload (dict[str, object]): Document, numpy values allowed

    Returns:
        Path: The written file

    Raises:
        FileExistsError: If the file exists
    """
    text = json.dumps(payload, indent=2, default=_json_default)
    with path.open('x', encoding='utf-8', newline='\n') as handle:
        handle.write(text + '\n')
    return path
