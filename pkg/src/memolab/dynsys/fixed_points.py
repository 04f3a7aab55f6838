"""
Local stability of training examples as fixed points of f.
"""

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from memolab.errors import ConvergenceError
from memolab.linear_fc import TrainingSet
from memolab.net_engine import Network
from memolab.numkit import Vector, spectral_radius, svd

from .trajectories import default_recovery_eps, training_scale

logger = logging.getLogger(__name__)


class Stability(StrEnum):
    ATTRACTOR = "attractor"
    REPELLER = "repeller"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FixedPointReport:
    """
    ``top_magnitude`` is the spectral radius of the Jacobian at ``point``,
    or its largest singular value when ``radius_is_bound`` is set.
    """

    point: Vector
    residual: float
    top_magnitude: float
    classification: Stability
    is_fixed_point: bool
    radius_is_bound: bool


def classify_fixed_point(
    net: Network,
    x: npt.ArrayLike,
    margin: float = 0.05,
    fixed_point_tol: float = 1e-3,
) -> FixedPointReport:
    """
    Classify ``x`` by the largest Jacobian eigenvalue magnitude: below
    1 − margin is an attractor, above 1 + margin a repeller, otherwise
    inconclusive.

    If power iteration fails the largest singular value is used; it can
    only certify attractors, so anything else is reported as inconclusive.
    """
    point = np.asarray(x, dtype=np.float64)
    residual = float(np.linalg.norm(net.forward(point) - point))
    jac = net.jacobian(point)
    try:
        top = spectral_radius(jac)
        bound = False
    except ConvergenceError:
        logger.warning("spectral radius did not converge; using the singular value bound")
        top = float(svd(jac).sigma[0])
        bound = True

    if top < 1.0 - margin:
        kind = Stability.ATTRACTOR
    elif top > 1.0 + margin and not bound:
        kind = Stability.REPELLER
    else:
        kind = Stability.INCONCLUSIVE
    return FixedPointReport(
        point=point,
        residual=residual,
        top_magnitude=top,
        classification=kind,
        is_fixed_point=residual <= fixed_point_tol,
        radius_is_bound=bound,
    )


def attractor_census(
    net: Network, train: TrainingSet, margin: float = 0.05
) -> list[FixedPointReport]:
    """One stability report per training example."""
    reports = [classify_fixed_point(net, x, margin) for x in train.examples]
    attractors = sum(r.classification is Stability.ATTRACTOR for r in reports)
    logger.info("attractor census: %d/%d attractors", attractors, train.n)
    return reports


@dataclass(frozen=True)
class SuperattractorReport:
    """Fraction of nearby starts captured within ``eps`` after one step."""

    index: int
    captured_fraction: float
    is_superattractor: bool


def superattractor_check(
    net: Network,
    train: TrainingSet,
    eps: float | None = None,
    radius_factor: float = 0.5,
    starts: int = 50,
    seed: int = 0,
) -> list[SuperattractorReport]:
    """
    Draw ``starts`` points around each example, at distances up to
    ``radius_factor`` × the median pairwise distance, apply f once and
    count how many land within ``eps`` of the example.
    """
    rng = np.random.default_rng(seed)
    radius = radius_factor * training_scale(train)
    tol = default_recovery_eps(train) if eps is None else eps
    reports = []
    for i, x in enumerate(train.examples):
        directions = rng.standard_normal((starts, train.d))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        offsets = directions * rng.uniform(0.0, radius, size=(starts, 1))
        images = net.forward(x + offsets)
        captured = float(np.mean(np.linalg.norm(images - x, axis=1) < tol))
        reports.append(SuperattractorReport(i, captured, captured == 1.0))
    return reports
