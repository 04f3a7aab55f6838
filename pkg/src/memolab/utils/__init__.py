"""
Utility modules for artifact file I/O and the worker pool.
"""

from .file_utils import ensure_dir, read_file, write_file
from .parallel import parallel_map, worker_count

__all__ = [
    "read_file",
    "write_file",
    "ensure_dir",
    "parallel_map",
    "worker_count",
]
