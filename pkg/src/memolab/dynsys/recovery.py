"""
Recovery probability: how often iterating f from test points lands on
training examples.
"""

import numpy as np

from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.net_engine import Network
from memolab.numkit import Vector

from .trajectories import iterate_many


def _recovered_fraction(images: np.ndarray, train: TrainingSet, eps: float) -> float:
    diff = images[:, None, :] - train.examples[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    dist = np.where(np.isfinite(dist), dist, np.inf)
    return float(np.mean(dist.min(axis=0) < eps))


def recovery_curve(
    net: Network,
    train: TrainingSet,
    test_set: TrainingSet,
    eps: float,
    t_max: int,
) -> Vector:
    """
    R_t for t = 1 … t_max: the fraction of training examples x₀ for which
    some test point x has ‖fᵗ(x) − x₀‖ < eps.
    """
    if test_set.d != train.d:
        raise InvalidInputError(
            f"test points have dimension {test_set.d}, training set {train.d}"
        )
    if t_max < 1:
        raise InvalidInputError(f"t_max must be >= 1, got {t_max}")
    if eps <= 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    orbits = iterate_many(net, test_set.examples, t_max)
    return np.array([_recovered_fraction(orbits[t], train, eps) for t in range(1, t_max + 1)])


def recovery_probability(
    net: Network,
    train: TrainingSet,
    test_set: TrainingSet,
    eps: float,
    t: int,
) -> float:
    """R_t for a single t (see ``recovery_curve``)."""
    return float(recovery_curve(net, train, test_set, eps, t)[-1])
