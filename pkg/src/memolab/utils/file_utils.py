"""
Text file helpers for memolab artifacts (matrices, training sets, networks).
"""

import os
import tempfile
from pathlib import Path


def read_file(file_path: str) -> str:
    """
    Read a UTF-8 text artifact.

    Raises:
        FileNotFoundError: If the file is missing or unreadable
    """
    try:
        return Path(file_path).read_text(encoding="utf-8")
    except OSError as e:
        raise FileNotFoundError(f"Could not read file {file_path}: {e}") from e


def write_file(file_path: str, content: str) -> None:
    """
    Write a UTF-8 text artifact atomically, creating parent directories.

    The content goes to a sibling temporary file first and is moved into
    place with ``os.replace``, so readers never observe a partial file.
    """
    target = Path(file_path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp_name, target)
    except OSError as e:
        raise OSError(f"Could not write file {file_path}: {e}") from e


def ensure_dir(dir_path: str | Path) -> Path:
    """Create ``dir_path`` (and parents) if needed and return it as a Path."""
    path = Path(dir_path)
    path.mkdir(parents=True, exist_ok=True)
    return path
