"""
Dense numerical kernels: Jacobi eigen-solver, SVD, rank and spectral radius.
"""

from .decompositions import (
    SingularValueDecomposition,
    numerical_rank,
    pinv,
    range_projector,
    svd,
)
from .eigen import EigenDecomposition, eigenvalue_magnitudes, spectral_radius, sym_eig
from .matrix import (
    Matrix,
    Vector,
    as_matrix,
    as_square,
    format_matrix,
    load_matrix,
    parse_matrix,
    save_matrix,
)

__all__ = [
    "Matrix",
    "Vector",
    "as_matrix",
    "as_square",
    "format_matrix",
    "parse_matrix",
    "save_matrix",
    "load_matrix",
    "EigenDecomposition",
    "sym_eig",
    "eigenvalue_magnitudes",
    "spectral_radius",
    "SingularValueDecomposition",
    "svd",
    "numerical_rank",
    "pinv",
    "range_projector",
]
