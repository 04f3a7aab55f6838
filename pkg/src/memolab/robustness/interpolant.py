"""
Piecewise-linear maps of [0, 1] that attract every training point and stay
within ε of the identity.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
import pandas as pd

from memolab.errors import InvalidInputError
from memolab.net_engine import (
    ActivationSpec,
    FullyConnectedSpec,
    InitializerSpec,
    Network,
    NetworkSpec,
)
from memolab.nonlinear_fc import ActivationKind
from memolab.numkit import Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PiecewiseLinear1D:
    """
    Continuous piecewise-linear map with segments split at ``changepoints``.

    Segment k covers [t_{k-1}, t_k) and evaluates ``slopes[k]·x +
    intercepts[k]``; segment 0 extends to −∞ and the last one to +∞.
    """

    changepoints: Vector
    slopes: Vector
    intercepts: Vector
    train_points: Vector = field(default_factory=lambda: np.empty(0))
    delta: float | None = None
    epsilon: float | None = None

    def __post_init__(self) -> None:
        t = np.asarray(self.changepoints, dtype=np.float64)
        s = np.asarray(self.slopes, dtype=np.float64)
        c = np.asarray(self.intercepts, dtype=np.float64)
        if s.shape != (t.size + 1,) or c.shape != (t.size + 1,):
            raise InvalidInputError(
                f"{t.size} changepoints need {t.size + 1} slopes and intercepts"
            )
        if np.any(np.diff(t) <= 0.0):
            raise InvalidInputError("changepoints must be strictly increasing")
        left = s[:-1] * t + c[:-1]
        right = s[1:] * t + c[1:]
        if not np.allclose(left, right, rtol=1e-12, atol=1e-12):
            raise InvalidInputError("segments do not join continuously")
        object.__setattr__(self, "changepoints", t)
        object.__setattr__(self, "slopes", s)
        object.__setattr__(self, "intercepts", c)
        object.__setattr__(
            self, "train_points", np.asarray(self.train_points, dtype=np.float64)
        )

    def segment(self, x: npt.ArrayLike) -> npt.NDArray[np.intp]:
        return np.searchsorted(self.changepoints, np.asarray(x, dtype=np.float64), side="right")

    def __call__(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        k = self.segment(x)
        return self.slopes[k] * x + self.intercepts[k]

    def slope_at(self, x: npt.ArrayLike) -> np.ndarray:
        return self.slopes[self.segment(x)]


def _training_grid(points: npt.ArrayLike) -> Vector:
    xs = np.asarray(points, dtype=np.float64).ravel()
    if xs.size == 0:
        raise InvalidInputError("need at least one training point")
    if np.any((xs <= 0.0) | (xs >= 1.0)):
        raise InvalidInputError("training points must lie strictly inside (0, 1)")
    xs = np.sort(xs)
    if np.any(np.diff(xs) == 0.0):
        raise InvalidInputError("training points must be distinct")
    return xs


def construct_interpolant(points: npt.ArrayLike, epsilon: float) -> PiecewiseLinear1D:
    """
    Build f with f(xᵢ) = xᵢ, slope 1 − ε/δ around each xᵢ, and
    |f(x) − x| ≤ ε on [0, 1].

    δ is a quarter of the smallest gap in 0 < x₁ < … < xₙ < 1 (the ends
    included); ε is clipped to δ.
    """
    if not epsilon > 0.0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    xs = _training_grid(points)
    delta = float(np.min(np.diff(np.concatenate(([0.0], xs, [1.0]))))) / 4.0
    eps = min(float(epsilon), delta)
    a = (2.0 * delta - 2.0 * eps) / (2.0 * delta)

    changepoints: list[float] = []
    slopes = [(xs[0] - delta + eps) / (xs[0] - delta)]
    intercepts = [0.0]
    for i, x in enumerate(xs):
        changepoints.extend([x - delta, x + delta])
        slopes.append(a)
        intercepts.append((1.0 - a) * (x - delta) + eps)
        if i + 1 < xs.size:
            gap = xs[i + 1] - x - 2.0 * delta
            b = (gap + 2.0 * eps) / gap
            slopes.append(b)
            intercepts.append((1.0 - b) * (x + delta) - eps)
    top = xs[-1] + delta
    c_right = (1.0 - (top - eps)) / (1.0 - top)
    slopes.append(c_right)
    intercepts.append(1.0 - c_right)

    logger.debug("interpolant: n=%d delta=%.4g epsilon=%.4g", xs.size, delta, eps)
    return PiecewiseLinear1D(
        changepoints=np.array(changepoints),
        slopes=np.array(slopes),
        intercepts=np.array(intercepts),
        train_points=xs,
        delta=delta,
        epsilon=eps,
    )


@dataclass(frozen=True)
class InterpolantAttractorReport:
    """
    ``limits[k]`` is the training point start k was captured by (NaN if the
    iteration budget ran out first).
    """

    train_slopes: Vector
    all_attracting: bool
    fixed_point_offsets: Vector
    boundary_slopes: tuple[float, float]
    limits: Vector
    iterations: npt.NDArray[np.int64]
    all_converged: bool


def interpolant_attractor_check(
    f: PiecewiseLinear1D,
    starts: int = 200,
    max_iter: int = 1_000_000,
    seed: int = 0,
) -> InterpolantAttractorReport:
    """
    Check every training point is an attracting fixed point and iterate
    uniform random starts until each enters the δ-window of a training point.

    Each window [xᵢ − δ, xᵢ + δ) is mapped into itself by a contraction, so
    entering it means converging to xᵢ.
    """
    if f.delta is None or f.train_points.size == 0:
        raise InvalidInputError("attractor check needs an interpolant with training points")
    xs, delta = f.train_points, f.delta
    slopes = f.slope_at(xs)
    offsets = f(xs) - xs

    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, size=starts)
    iterations = np.zeros(starts, dtype=np.int64)
    captured = np.zeros(starts, dtype=bool)
    for _ in range(max_iter):
        gaps = x[:, None] - xs[None, :]
        captured = np.any((gaps >= -delta) & (gaps < delta), axis=1)
        if captured.all():
            break
        x = np.where(captured, x, f(x))
        iterations += ~captured

    nearest = xs[np.argmin(np.abs(x[:, None] - xs[None, :]), axis=1)]
    limits = np.where(captured, nearest, np.nan)
    return InterpolantAttractorReport(
        train_slopes=slopes,
        all_attracting=bool(np.all(np.abs(slopes) < 1.0)),
        fixed_point_offsets=offsets,
        boundary_slopes=(float(f.slopes[0]), float(f.slopes[-1])),
        limits=limits,
        iterations=iterations,
        all_converged=bool(captured.all()),
    )


def expected_reconstruction_error(f: PiecewiseLinear1D, panels: int = 100_000) -> float:
    """∫₀¹ (f(x) − x)² dx by the trapezoid rule."""
    grid = np.linspace(0.0, 1.0, panels + 1)
    err = f(grid) - grid
    return float(np.trapezoid(err * err, grid))


def pointwise_error_bound(f: PiecewiseLinear1D) -> float:
    """
    max |f(x) − x| over [x₁ − δ, xₙ + δ].

    The error is linear on each segment, so the changepoints suffice.
    """
    probes = np.concatenate((f.changepoints, f.train_points))
    return float(np.max(np.abs(f(probes) - probes)))


def interpolant_frame(f: PiecewiseLinear1D, points: int = 1001) -> pd.DataFrame:
    """``x``/``fx`` samples on [0, 1] for plotting."""
    grid = np.linspace(0.0, 1.0, points)
    return pd.DataFrame({"x": grid, "fx": f(grid)})


def to_relu_network(
    f: PiecewiseLinear1D | Sequence[PiecewiseLinear1D], dim: int = 1
) -> Network:
    """
    Exact two-layer ReLU network applying piecewise-linear maps coordinate-wise.

    With changepoints t₀ < … < t_{m−1} and segment slopes s₀ … s_m,
    f(x) = f(t₀) − s₀·relu(t₀ − x) + s₁·relu(x − t₀)
    + Σ_{k≥1} (s_{k+1} − s_k)·relu(x − t_k), so each coordinate needs
    m + 1 hidden units (2 for a map without changepoints).
    """
    funcs = [f] * dim if isinstance(f, PiecewiseLinear1D) else list(f)
    if not funcs:
        raise InvalidInputError("need at least one coordinate map")
    d = len(funcs)

    w1_blocks, b1_blocks, w2_rows, b2 = [], [], [], []
    for fn in funcs:
        t = fn.changepoints if fn.changepoints.size else np.array([0.0])
        s = fn.slopes if fn.changepoints.size else np.repeat(fn.slopes, 2)
        w1_blocks.append(np.concatenate(([-1.0], np.ones(t.size))))
        b1_blocks.append(np.concatenate(([t[0]], -t)))
        w2_rows.append(np.concatenate(([-s[0], s[1]], np.diff(s[1:]))))
        b2.append(float(fn(t[0])))

    hidden = sum(block.size for block in w1_blocks)
    w1 = np.zeros((hidden, d))
    w2 = np.zeros((d, hidden))
    offset = 0
    for j, (wb, wr) in enumerate(zip(w1_blocks, w2_rows, strict=True)):
        w1[offset : offset + wb.size, j] = wb
        w2[j, offset : offset + wr.size] = wr
        offset += wb.size

    spec = NetworkSpec(
        layers=[
            FullyConnectedSpec(
                in_features=d,
                out_features=hidden,
                activation=ActivationSpec(name=ActivationKind.RELU),
                bias=True,
            ),
            FullyConnectedSpec(in_features=hidden, out_features=d, bias=True),
        ],
        initializer=InitializerSpec(name="zeros"),
    )
    return Network(spec, [[w1, np.concatenate(b1_blocks)], [w2, np.array(b2)]])
