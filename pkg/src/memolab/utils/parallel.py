"""
Order-preserving worker pool for independent seeds and starts.
"""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "MEMOLAB_THREADS"


def worker_count() -> int:
    """
    Number of workers to use, capped by ``MEMOLAB_THREADS`` when set.

    Invalid or non-positive values fall back to a single worker.
    """
    default = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return default
    try:
        requested = int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
        return 1
    return max(1, min(requested, default))


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """
    Apply ``fn`` to every item and return results in input order.

    Each task must own its random generator; results are therefore identical
    whatever the worker count.
    """
    work = list(items)
    workers = min(worker_count(), max(1, len(work)))
    if workers == 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
