"""
Eigen-solvers: cyclic Jacobi for symmetric matrices and block power
iteration for the spectral radius of general square matrices.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from memolab.errors import ConvergenceError, InvalidInputError

from .matrix import Matrix, Vector, as_square

logger = logging.getLogger(__name__)

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix; ``vectors[:, i]`` pairs with ``values[i]``."""

    values: Vector
    vectors: Matrix


def _rotate(a: Matrix, v: Matrix, p: int, q: int) -> None:
    """Annihilate ``a[p, q]`` in place with one Jacobi rotation."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def sym_eig(m: Matrix, tol: float = 1e-10, max_sweeps: int = 100) -> EigenDecomposition:
    """
    Eigen-decompose a real symmetric matrix with the cyclic Jacobi method.

    Sweeps visit every (p, q) pair above the diagonal and rotate away any
    entry that is not negligible next to its diagonal pair. The method
    stops after the first sweep that performs no rotation.

    Args:
        m: Square symmetric matrix
        tol: Largest asymmetry |m - mᵀ| accepted, relative to max(1, max |m|)
        max_sweeps: Sweep budget

    Returns:
        Eigenvalues sorted in descending order with orthonormal eigenvectors

    Raises:
        InvalidInputError: If ``m`` is not square, not symmetric within ``tol``
            or ``tol`` is negative
        ConvergenceError: If the sweep budget runs out
    """
    if not tol >= 0.0:
        raise InvalidInputError(f"symmetry tolerance must be non-negative, got {tol}")
    a = as_square(m)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * max(1.0, scale)):
        raise InvalidInputError(f"sym_eig requires a symmetric matrix (tol={tol:g})")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    floor = EPS * 1e-3 * scale

    for sweep in range(max_sweeps):
        rotations = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = abs(a[p, q])
                if apq <= floor or apq <= EPS * math.sqrt(abs(a[p, p] * a[q, q])):
                    continue
                _rotate(a, v, p, q)
                rotations += 1
        if rotations == 0:
            logger.debug("Jacobi converged after %d sweeps (n=%d)", sweep + 1, n)
            break
    else:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps",
            last_iterate=a,
            diagnostics={"off_norm": float(np.linalg.norm(a - np.diag(np.diag(a))))},
        )

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=v[:, order])


def eigenvalue_magnitudes(m: Matrix) -> Vector:
    """Absolute eigenvalues of a general square matrix, largest first."""
    a = as_square(m)
    return np.sort(np.abs(np.linalg.eigvals(a)))[::-1]


def spectral_radius(
    m: Matrix,
    iters: int = 5000,
    tol: float = 1e-10,
    seed: int = 0,
    block: int = 3,
    restarts: int = 3,
) -> float:
    """
    Estimate the largest eigenvalue magnitude by block power iteration.

    A block of ``block`` orthonormal columns is pushed through ``m`` and
    re-orthonormalised each step; the Ritz values of the projected block
    capture real dominant eigenvalues and complex-conjugate pairs alike.

    Args:
        m: Square matrix
        iters: Iterations per attempt
        tol: Relative change in the estimate that counts as converged
        seed: Seed for the random starting blocks
        block: Block width
        restarts: Number of random restarts before giving up

    Returns:
        The spectral radius estimate (never above the largest singular value)

    Raises:
        ConvergenceError: If no attempt converges; ``last_iterate`` holds the
            final estimate
    """
    a = as_square(m)
    n = a.shape[0]
    width = max(1, min(block, n))
    rng = np.random.default_rng(seed)
    estimate = math.nan

    for attempt in range(restarts):
        q, _ = np.linalg.qr(rng.standard_normal((n, width)))
        previous = math.inf
        for step in range(iters):
            z = a @ q
            ritz = np.linalg.eigvals(q.T @ z)
            estimate = float(np.max(np.abs(ritz)))
            if not math.isfinite(estimate):
                break
            if abs(estimate - previous) <= tol * max(estimate, 1e-300):
                logger.debug(
                    "spectral_radius converged: attempt=%d step=%d", attempt, step
                )
                return estimate
            previous = estimate
            q, _ = np.linalg.qr(z)
        logger.debug("spectral_radius attempt %d did not converge", attempt)

    raise ConvergenceError(
        f"power iteration did not converge after {restarts} restarts",
        last_iterate=estimate,
    )
