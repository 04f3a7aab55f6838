"""
Singular value decomposition and the quantities derived from it.
"""

from dataclasses import dataclass

import numpy as np

from memolab.errors import InvalidInputError

from .eigen import sym_eig
from .matrix import Matrix, Vector, as_matrix


@dataclass(frozen=True)
class SingularValueDecomposition:
    """Thin SVD ``m = u @ diag(sigma) @ v.T`` with ``sigma`` descending."""

    u: Matrix
    sigma: Vector
    v: Matrix

    def reconstruct(self) -> Matrix:
        return (self.u * self.sigma) @ self.v.T


def svd(m: Matrix) -> SingularValueDecomposition:
    """
    Thin SVD built on the symmetric eigen-solver.

    The right factors are the eigenvectors of ``mᵀm`` (or ``mmᵀ`` for wide
    inputs). The left factors are recovered from ``m @ v`` by a QR
    factorisation, which keeps them orthonormal even where singular values
    vanish; singular values are the magnitudes of ``R``'s diagonal.
    """
    a = as_matrix(m)
    rows, cols = a.shape
    if rows < cols:
        wide = svd(a.T)
        return SingularValueDecomposition(u=wide.v, sigma=wide.sigma, v=wide.u)

    gram = a.T @ a
    eig = sym_eig(0.5 * (gram + gram.T))
    v = eig.vectors
    q, r = np.linalg.qr(a @ v)
    diag = np.diag(r)
    signs = np.where(diag < 0.0, -1.0, 1.0)
    u = q * signs
    sigma = np.abs(diag)

    order = np.argsort(-sigma, kind="stable")
    return SingularValueDecomposition(u=u[:, order], sigma=sigma[order], v=v[:, order])


def numerical_rank(m: Matrix, rel_tol: float = 1e-6) -> int:
    """Count singular values above ``rel_tol`` times the largest one."""
    if rel_tol <= 0:
        raise InvalidInputError(f"rel_tol must be positive, got {rel_tol}")
    sigma = svd(m).sigma
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rel_tol * sigma[0]))


def pinv(m: Matrix, rel_tol: float = 1e-12) -> Matrix:
    """Moore-Penrose pseudoinverse, truncating singular values below ``rel_tol``."""
    dec = svd(m)
    if dec.sigma.size == 0 or dec.sigma[0] == 0.0:
        return np.zeros((m.shape[1], m.shape[0]))
    keep = dec.sigma > rel_tol * dec.sigma[0]
    return (dec.v[:, keep] / dec.sigma[keep]) @ dec.u[:, keep].T


def range_projector(m: Matrix, rel_tol: float = 1e-8) -> Matrix:
    """Orthogonal projector onto the row space of ``m``."""
    dec = svd(m)
    if dec.sigma.size == 0 or dec.sigma[0] == 0.0:
        return np.zeros((m.shape[1], m.shape[1]))
    basis = dec.v[:, dec.sigma > rel_tol * dec.sigma[0]]
    return basis @ basis.T
