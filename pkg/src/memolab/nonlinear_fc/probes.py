"""
Probes on a trained layer f(u) = φ(A u): φ-eigenvectors and φ-span membership.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.numkit import Matrix, range_projector

from .activation import Activation


@dataclass(frozen=True)
class PhiEigenReport:
    eigenvalue: float
    residual: float
    is_eigenvector: bool


@dataclass(frozen=True)
class SpanMembership:
    """Distance of φ⁻¹(y) from span{φ⁻¹(x⁽ⁱ⁾)}, absolute and relative."""

    distance: float
    relative_distance: float
    member: bool


def phi_eigencheck(
    a: Matrix, phi: Activation, u: npt.ArrayLike, tol: float = 1e-3
) -> PhiEigenReport:
    """
    Test whether φ(A u) = λ u.

    λ is the Rayleigh-style fit ⟨φ(Au), u⟩ / ⟨u, u⟩ and the residual is
    ‖φ(Au) − λu‖ / ‖u‖.
    """
    u = np.asarray(u, dtype=np.float64)
    norm_sq = float(u @ u)
    if norm_sq == 0.0:
        raise InvalidInputError("probe vector must be non-zero")
    image = phi(a @ u)
    lam = float(image @ u) / norm_sq
    residual = float(np.linalg.norm(image - lam * u)) / np.sqrt(norm_sq)
    return PhiEigenReport(eigenvalue=lam, residual=residual, is_eigenvector=residual < tol)


def phi_span_membership(
    train: TrainingSet, phi: Activation, y: npt.ArrayLike, tol: float = 1e-4
) -> SpanMembership:
    """
    Check whether φ⁻¹(y) lies in the span of the training pre-images.

    ``member`` compares the distance against ``tol · max(1, ‖φ⁻¹(y)‖)``.

    Raises:
        InvalidInputError: If ``y`` has entries outside the range of φ
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (train.d,):
        raise InvalidInputError(f"probe must have shape ({train.d},), got {y.shape}")
    target = phi.inverse(y)
    projector = range_projector(phi.inverse(train.examples))
    distance = float(np.linalg.norm(target - projector @ target))
    scale = float(np.linalg.norm(target))
    relative = distance / scale if scale > 0.0 else 0.0
    return SpanMembership(
        distance=distance,
        relative_distance=relative,
        member=distance <= tol * max(1.0, scale),
    )
