"""
Artifact Writers
Atomic CSV and flat key=value writers for simulation outputs
"""
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _atomic_write(path: PathLike, text: str) -> Path:
    """Write text to path through a temp file in the same directory"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except Exception:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise
    return path


def format_value(value) -> str:
    """Render one value the same way on every run"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12e}"
    return str(value)


def write_columns(path: PathLike, header: Sequence[str], columns: Sequence[np.ndarray],
                  fmts: Sequence[str]) -> Path:
    """
    Write equal-length columns as CSV with a one-line header

    Args:
        path: Destination file
        header: Column names including units (e.g. 'time_s')
        columns: One array per column
        fmts: printf-style format per column ('%d', '%.12e')

    Returns:
        Path of the written file
    """
    if len(header) != len(columns) or len(columns) != len(fmts):
        raise ValueError("header, columns and fmts must have the same length")
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise ValueError(f"column lengths differ: {sorted(lengths)}")

    line_fmt = ",".join(fmts)
    rows = zip(*columns)
    body = "\n".join(line_fmt % tuple(row) for row in rows)
    text = ",".join(header) + "\n" + (body + "\n" if body else "")
    written = _atomic_write(path, text)
    logger.debug(f"Wrote {len(columns[0]) if columns else 0} rows to {written}")
    return written


def write_key_values(path: PathLike, values: Dict[str, object]) -> Path:
    """Write a flat key=value report, one pair per line, in insertion order"""
    text = "".join(f"{key}={format_value(val)}\n" for key, val in values.items())
    return _atomic_write(path, text)


def read_columns(path: PathLike, dtype=float) -> Dict[str, np.ndarray]:
    """Read a CSV written by write_columns back into named arrays"""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, dtype=dtype, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(header)}

