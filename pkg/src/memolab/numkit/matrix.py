"""
Dense matrix carrier and its text format.

A ``Matrix`` is a row-major ``float64`` ndarray. The text format is a
``"rows cols"`` header followed by one row per line with 17 significant
digits, so values round-trip exactly.
"""

from pathlib import Path

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError
from memolab.utils.file_utils import read_file, write_file

Matrix = npt.NDArray[np.float64]
Vector = npt.NDArray[np.float64]


def as_matrix(data: npt.ArrayLike, name: str = "matrix") -> Matrix:
    """
    Convert array-like data into a validated 2-D float64 matrix.

    Args:
        data: Anything numpy can turn into a 2-D array
        name: Label used in error messages

    Returns:
        A C-contiguous float64 copy of the data

    Raises:
        InvalidInputError: If the data is not 2-D or holds non-finite values
    """
    m = np.array(data, dtype=np.float64, order="C")
    if m.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return m


def as_square(data: npt.ArrayLike, name: str = "matrix") -> Matrix:
    """Like ``as_matrix`` but also require a square shape."""
    m = as_matrix(data, name)
    if m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {m.shape}")
    return m


def format_matrix(m: Matrix) -> str:
    """Render a matrix in the memolab text format."""
    rows, cols = m.shape
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(f"{v:.17g}" for v in row) for row in m)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, name: str = "matrix") -> Matrix:
    """
    Parse the memolab matrix text format.

    Raises:
        InvalidInputError: If the header is missing or the body does not
            match the declared shape
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidInputError(f"{name}: empty input")
    try:
        rows, cols = (int(tok) for tok in lines[0].split())
    except ValueError as e:
        raise InvalidInputError(f"{name}: bad header {lines[0]!r}") from e
    body = lines[1:]
    if len(body) != rows:
        raise InvalidInputError(f"{name}: header says {rows} rows, found {len(body)}")
    values = np.zeros((rows, cols), dtype=np.float64)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise InvalidInputError(
                f"{name}: row {i + 1} has {len(tokens)} values, expected {cols}"
            )
        values[i] = [float(tok) for tok in tokens]
    return values


def save_matrix(m: Matrix, path: str | Path) -> None:
    """Write a matrix to ``path`` in the text format."""
    write_file(str(path), format_matrix(as_matrix(m)))


def load_matrix(path: str | Path) -> Matrix:
    """Read a matrix written by ``save_matrix``."""
    return parse_matrix(read_file(str(path)), name=str(path))
