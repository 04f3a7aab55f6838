"""
Spectral summaries of linearized operators.
"""

from dataclasses import dataclass

import numpy as np

from memolab.errors import InvalidInputError
from memolab.numkit import Matrix, Vector, as_square, eigenvalue_magnitudes, numerical_rank

from .operators import LinearizedOp


@dataclass(frozen=True)
class SpectrumReport:
    """
    ``magnitudes`` are all |eigenvalues| in descending order; ``leading``
    are those above the tail threshold and ``tail_bound`` is the largest of
    the rest (0 when none remain).
    """

    magnitudes: Vector
    leading: Vector
    tail_bound: float
    rank_estimate: int


def spectrum(
    op: LinearizedOp | Matrix,
    tail_threshold: float = 1e-2,
    rank_tol: float = 1e-4,
) -> SpectrumReport:
    """Eigenvalue magnitudes of a square operator (interior part for a LinearizedOp)."""
    matrix = op.interior() if isinstance(op, LinearizedOp) else op
    matrix = as_square(matrix, "operator")
    if tail_threshold < 0:
        raise InvalidInputError(f"tail_threshold must be >= 0, got {tail_threshold}")
    mags = eigenvalue_magnitudes(matrix)
    leading = mags[mags > tail_threshold]
    tail = mags[mags <= tail_threshold]
    return SpectrumReport(
        magnitudes=mags,
        leading=leading,
        tail_bound=float(tail.max()) if tail.size else 0.0,
        rank_estimate=numerical_rank(matrix, rank_tol),
    )
