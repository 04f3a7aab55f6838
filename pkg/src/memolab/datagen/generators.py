"""
Seeded generators for the synthetic datasets.
"""

import math

import numpy as np
import numpy.typing as npt

from memolab.linear_fc import TrainingSet
from memolab.numkit import Matrix

from .specs import (
    DatasetSpec,
    GaussianImagesSpec,
    GridProbesSpec,
    OrthogonalSquaresSpec,
    SwissRollSpec,
    UniformBoxSpec,
    UnitIntervalSpec,
    WhiteSquareSpec,
)

ROLL_T_MIN = 1.5 * math.pi
ROLL_T_MAX = 4.5 * math.pi
ROLL_HEIGHT = 21.0


def swiss_roll(n: int, noise: float, rng: np.random.Generator) -> Matrix:
    """
    Points (t cos t, h, t sin t) with t ∈ [1.5π, 4.5π], h ∈ [0, 21], mapped
    into the unit box by fixed affine scalings.
    """
    t = ROLL_T_MIN + (ROLL_T_MAX - ROLL_T_MIN) * rng.uniform(size=n)
    h = ROLL_HEIGHT * rng.uniform(size=n)
    raw = np.column_stack((t * np.cos(t), h, t * np.sin(t)))
    if noise > 0.0:
        raw = raw + noise * rng.standard_normal(raw.shape)
    return scale_swiss_roll(raw)


def scale_swiss_roll(raw: npt.ArrayLike) -> Matrix:
    raw = np.asarray(raw, dtype=np.float64)
    return np.column_stack(
        (
            (raw[:, 0] + ROLL_T_MAX) / (2.0 * ROLL_T_MAX),
            raw[:, 1] / ROLL_HEIGHT,
            (raw[:, 2] + ROLL_T_MAX) / (2.0 * ROLL_T_MAX),
        )
    )


def unscale_swiss_roll(points: npt.ArrayLike) -> Matrix:
    """Inverse of ``scale_swiss_roll``."""
    p = np.asarray(points, dtype=np.float64)
    return np.column_stack(
        (
            p[:, 0] * 2.0 * ROLL_T_MAX - ROLL_T_MAX,
            p[:, 1] * ROLL_HEIGHT,
            p[:, 2] * 2.0 * ROLL_T_MAX - ROLL_T_MAX,
        )
    )


def white_square(side: int, square_side: int, corner: str) -> Matrix:
    image = np.zeros((side, side))
    rows = slice(0, square_side) if corner.startswith("upper") else slice(side - square_side, side)
    cols = slice(0, square_side) if corner.endswith("left") else slice(side - square_side, side)
    image[rows, cols] = 1.0
    return image.reshape(1, -1)


def _distinct_uniform(n: int, rng: np.random.Generator) -> np.ndarray:
    points = np.unique(rng.uniform(size=n))
    while points.size < n:
        points = np.unique(np.concatenate((points, rng.uniform(size=n - points.size))))
    return points


def rescale(values: Matrix, low: float, high: float) -> Matrix:
    """Min-max map every entry into [low, high] (constant data goes to the midpoint)."""
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.full_like(values, 0.5 * (low + high))
    return low + (values - lo) * (high - low) / (hi - lo)


def generate(spec: DatasetSpec) -> TrainingSet:
    """Materialise a dataset description as a training set."""
    rng = np.random.default_rng(spec.seed)
    match spec:
        case SwissRollSpec():
            values = swiss_roll(spec.n, spec.noise, rng)
        case WhiteSquareSpec():
            values = white_square(spec.side, spec.square_side, spec.corner)
        case OrthogonalSquaresSpec():
            half = spec.side // 2
            values = np.vstack(
                (
                    white_square(spec.side, half, "upper_left"),
                    white_square(spec.side, half, "lower_right"),
                )
            )
        case GaussianImagesSpec():
            noise = rng.standard_normal((spec.n, spec.channels * spec.side * spec.side))
            values = rescale(noise, 0.0, 1.0)
        case UnitIntervalSpec():
            values = _distinct_uniform(spec.n, rng).reshape(-1, 1)
        case UniformBoxSpec():
            values = rng.uniform(spec.low, spec.high, size=(spec.n, spec.d))
        case GridProbesSpec():
            axes = [
                np.linspace(lo, hi, count)
                for (lo, hi), count in zip(spec.ranges, spec.counts, strict=True)
            ]
            mesh = np.meshgrid(*axes, indexing="ij")
            values = np.column_stack([m.ravel() for m in mesh])
        case _:
            raise TypeError(f"unsupported dataset spec {type(spec).__name__}")
    if spec.rescale is not None:
        values = rescale(values, *spec.rescale)
    return TrainingSet(values)
