"""
Iterating a trained autoencoder as the discrete map x ↦ f(x).
"""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pandas as pd

from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.net_engine import Network
from memolab.numkit import Matrix

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["start_id", "step", "nearest_train_id", "nearest_train_distance"]


@dataclass(frozen=True)
class Trajectory:
    """
    ``points[t]`` is fᵗ(x₀); ``distances[t, i]`` is ‖fᵗ(x₀) − x⁽ⁱ⁾‖ when a
    training set was given. ``truncated`` marks an orbit cut short by a
    non-finite value.
    """

    points: Matrix
    distances: Matrix | None
    converged_to: int | None
    truncated: bool

    @property
    def steps(self) -> int:
        return int(self.points.shape[0] - 1)


def default_recovery_eps(train: TrainingSet) -> float:
    """
    5% of the median pairwise distance between training examples.

    A single example has no pairs; its norm (at least 1) sets the scale.
    """
    return 0.05 * training_scale(train)


def training_scale(train: TrainingSet) -> float:
    if train.n == 1:
        return max(float(np.linalg.norm(train.examples[0])), 1.0)
    dist = train.pairwise_distances()
    return float(np.median(dist[np.triu_indices(train.n, k=1)]))


def _distances(points: Matrix, train: TrainingSet) -> Matrix:
    diff = points[:, None, :] - train.examples[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def iterate(
    net: Network,
    x0: npt.ArrayLike,
    steps: int,
    train: TrainingSet | None = None,
    eps: float | None = None,
) -> Trajectory:
    """
    Follow the orbit of ``x0`` for ``steps`` applications of f.

    ``converged_to`` is the index of the training example within ``eps``
    of the final point (default ``default_recovery_eps``), if any.
    """
    if steps < 0:
        raise InvalidInputError(f"steps must be non-negative, got {steps}")
    x = np.asarray(x0, dtype=np.float64)
    if x.shape != (net.dim,):
        raise InvalidInputError(f"start must have shape ({net.dim},), got {x.shape}")
    points = [x]
    truncated = False
    for t in range(steps):
        nxt = net.forward(x)
        if not np.all(np.isfinite(nxt)):
            logger.debug("orbit left the finite range at step %d", t + 1)
            truncated = True
            break
        points.append(nxt)
        x = nxt
    stacked = np.vstack(points)

    if train is None:
        return Trajectory(stacked, None, None, truncated)
    distances = _distances(stacked, train)
    radius = default_recovery_eps(train) if eps is None else eps
    nearest = int(np.argmin(distances[-1]))
    converged = nearest if distances[-1, nearest] < radius else None
    return Trajectory(stacked, distances, converged, truncated)


def iterate_many(net: Network, starts: npt.ArrayLike, steps: int) -> np.ndarray:
    """
    Batched orbits: result[t, k] is fᵗ(starts[k]).

    Orbits that leave the finite range stay NaN from then on.
    """
    x = np.atleast_2d(np.asarray(starts, dtype=np.float64))
    out = np.empty((steps + 1, *x.shape))
    out[0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(steps):
            x = net.forward(x)
            x[~np.all(np.isfinite(x), axis=1)] = np.nan
            out[t + 1] = x
    return out


def trajectories_frame(
    trajectories: list[Trajectory], with_coordinates: bool = False
) -> pd.DataFrame:
    """
    One row per (start, step) with the nearest training example.

    ``with_coordinates`` adds ``coord_0 … coord_{d-1}`` columns.
    """
    rows = []
    for start_id, traj in enumerate(trajectories):
        if traj.distances is None:
            raise InvalidInputError("trajectories need distances to a training set")
        nearest = np.argmin(traj.distances, axis=1)
        for step, point in enumerate(traj.points):
            row = {
                "start_id": start_id,
                "step": step,
                "nearest_train_id": int(nearest[step]),
                "nearest_train_distance": float(traj.distances[step, nearest[step]]),
            }
            if with_coordinates:
                row.update({f"coord_{j}": float(v) for j, v in enumerate(point)})
            rows.append(row)
    return pd.DataFrame(rows, columns=None if with_coordinates else TRAJECTORY_COLUMNS)
