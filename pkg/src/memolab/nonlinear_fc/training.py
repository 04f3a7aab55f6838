"""
Training a single nonlinear layer x ↦ φ(A x) from A = 0.

``adaptive_gd`` rescales each example's step by the secant slope of φ
between 0 and that example's pre-image, which turns the update into linear
regression towards A x⁽ⁱ⁾ = φ⁻¹(x⁽ⁱ⁾). ``constant_lr_gd`` is plain gradient
descent on ½ Σᵢ ‖φ(A x⁽ⁱ⁾) − x⁽ⁱ⁾‖² for comparison.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from memolab.errors import DivergenceError, InvalidInputError
from memolab.linear_fc import TrainingSet, covariance
from memolab.numkit import Matrix, Vector, sym_eig

from .activation import Activation
from .assumption import check_assumption1

logger = logging.getLogger(__name__)

StepCallback = Callable[[int, Matrix], None]


def ratio_bound(ts: TrainingSet) -> float:
    """L = maxᵢ maxⱼ,ₖ x_j⁽ⁱ⁾ / x_k⁽ⁱ⁾ for strictly positive examples."""
    x = ts.examples
    if np.any(x <= 0.0):
        raise InvalidInputError("ratio bound needs strictly positive examples")
    return float(np.max(x.max(axis=1) / x.min(axis=1)))


def slope_table(ts: TrainingSet, phi: Activation) -> Matrix:
    """
    Secant slopes s[i, r] = −(φ(0) − x_r⁽ⁱ⁾) / φ⁻¹(x_r⁽ⁱ⁾).

    Row i is example i, column r the output coordinate (row of A) it drives.
    """
    pre = phi.inverse(ts.examples)
    if np.any(pre == 0.0):
        raise InvalidInputError("an example coordinate equals φ(0); slope undefined")
    return -(phi.value_at_zero - ts.examples) / pre


@dataclass(frozen=True)
class AdaptiveGdConfig:
    """Learning rate γ, slope table and stopping rule for ``adaptive_gd``."""

    gamma: float
    slopes: Matrix
    ratio_bound: float
    max_steps: int = 1_000_000
    tol: float = 1e-6
    log_every: int = 50_000

    @classmethod
    def from_training_set(
        cls,
        ts: TrainingSet,
        phi: Activation,
        safety: float = 0.9,
        max_steps: int = 1_000_000,
        tol: float = 1e-6,
    ) -> "AdaptiveGdConfig":
        """Pick γ = safety / (n L d), inside the provable range."""
        bound = ratio_bound(ts)
        return cls(
            gamma=safety / (ts.n * bound * ts.d),
            slopes=slope_table(ts, phi),
            ratio_bound=bound,
            max_steps=max_steps,
            tol=tol,
        )


@dataclass(frozen=True)
class NonlinearGdResult:
    """
    Outcome of a nonlinear trainer.

    ``residuals[t]`` is maxᵢ ‖φ(A⁽ᵗ⁾ x⁽ⁱ⁾) − x⁽ⁱ⁾‖∞. ``monotone`` reports
    whether every entry of A moved in one direction only (away from zero,
    with the sign of its row's pre-images).
    """

    weights: Matrix
    steps: int
    residuals: Vector
    converged: bool
    monotone: bool
    gamma: float


def reconstruction_residual(a: Matrix, ts: TrainingSet, phi: Activation) -> float:
    return float(np.max(np.abs(phi(ts.examples @ a.T) - ts.examples)))


def _row_directions(ts: TrainingSet, phi: Activation) -> Vector:
    pre = phi.inverse(ts.examples)
    return np.sign(pre[0])


def adaptive_gd(
    ts: TrainingSet,
    phi: Activation,
    cfg: AdaptiveGdConfig | None = None,
    callback: StepCallback | None = None,
) -> NonlinearGdResult:
    """
    Adaptive-rate gradient descent from A = 0.

    Row r of A is updated as
    a_r ← a_r + Σᵢ γᵢ,ᵣ x⁽ⁱ⁾ (φ(a_r · x⁽ⁱ⁾) − x_r⁽ⁱ⁾) with γᵢ,ᵣ = −γ / s[i, r].

    Raises:
        InvalidInputError: If there are not fewer examples than dimensions,
            the training set fails the memorization assumption or γ is
            outside (0, 1/(nLd))
        DivergenceError: If the weights turn non-finite
    """
    if ts.n >= ts.d:
        raise InvalidInputError(
            f"adaptive GD needs an overparameterized set (n < d), got n={ts.n}, d={ts.d}"
        )
    report = check_assumption1(ts, phi)
    if not report.passed:
        raise InvalidInputError(
            "training set violates the memorization assumption: "
            + "; ".join(report.failures())
        )
    if cfg is None:
        cfg = AdaptiveGdConfig.from_training_set(ts, phi)
    limit = 1.0 / (ts.n * cfg.ratio_bound * ts.d)
    if not 0.0 < cfg.gamma < limit:
        raise InvalidInputError(f"gamma must lie in (0, {limit:.6g}), got {cfg.gamma}")

    x = ts.examples
    rates = -cfg.gamma / cfg.slopes
    direction = _row_directions(ts, phi)[:, None]
    a = np.zeros((ts.d, ts.d))
    residuals: list[float] = []
    monotone = True
    converged = False
    steps = 0

    while True:
        err = phi(x @ a.T) - x
        residual = float(np.max(np.abs(err)))
        residuals.append(residual)
        if residual < cfg.tol:
            converged = True
            break
        if steps >= cfg.max_steps:
            break
        delta = (rates * err).T @ x
        if monotone and np.any(delta * direction < -1e-14):
            monotone = False
        nxt = a + delta
        if not np.all(np.isfinite(nxt)):
            raise DivergenceError(
                f"adaptive GD produced non-finite weights at step {steps + 1}",
                last_stable=a,
            )
        a = nxt
        steps += 1
        if callback is not None:
            callback(steps, a)
        if steps % cfg.log_every == 0:
            logger.debug("adaptive_gd step=%d residual=%.3e", steps, residual)

    logger.info(
        "adaptive_gd: steps=%d residual=%.3e converged=%s", steps, residuals[-1], converged
    )
    return NonlinearGdResult(
        weights=a,
        steps=steps,
        residuals=np.asarray(residuals),
        converged=converged,
        monotone=monotone,
        gamma=cfg.gamma,
    )


def default_constant_rate(ts: TrainingSet, phi: Activation, safety: float = 0.9) -> float:
    """
    safety / (g² λ₁(S)), with g the largest slope of φ between 0 and the
    pre-images of the training data.
    """
    pre = phi.inverse(ts.examples)
    grid = np.linspace(min(0.0, pre.min()), max(0.0, pre.max()), 1000)
    slope = float(np.max(np.abs(phi.derivative(grid))))
    top = float(sym_eig(covariance(ts)).values[0])
    if slope == 0.0 or top == 0.0:
        raise InvalidInputError("cannot derive a learning rate: flat φ or zero data")
    return safety / (slope * slope * top)


def constant_lr_gd(
    ts: TrainingSet,
    phi: Activation,
    gamma: float | None = None,
    max_steps: int = 1_000_000,
    tol: float = 1e-6,
) -> NonlinearGdResult:
    """Plain gradient descent with a constant rate from A = 0."""
    if gamma is None:
        gamma = default_constant_rate(ts, phi)
    if not gamma > 0.0:
        raise InvalidInputError(f"learning rate must be positive, got {gamma}")

    x = ts.examples
    direction = _row_directions(ts, phi)[:, None]
    a = np.zeros((ts.d, ts.d))
    residuals: list[float] = []
    monotone = True
    converged = False
    steps = 0

    while True:
        z = x @ a.T
        err = phi(z) - x
        residual = float(np.max(np.abs(err)))
        residuals.append(residual)
        if residual < tol:
            converged = True
            break
        if steps >= max_steps:
            break
        delta = -gamma * (err * phi.derivative(z)).T @ x
        if monotone and np.any(delta * direction < -1e-14):
            monotone = False
        nxt = a + delta
        if not np.all(np.isfinite(nxt)):
            raise DivergenceError(
                f"constant-rate GD produced non-finite weights at step {steps + 1}",
                last_stable=a,
            )
        a = nxt
        steps += 1

    logger.info(
        "constant_lr_gd: gamma=%.3g steps=%d residual=%.3e", gamma, steps, residuals[-1]
    )
    return NonlinearGdResult(
        weights=a,
        steps=steps,
        residuals=np.asarray(residuals),
        converged=converged,
        monotone=monotone,
        gamma=gamma,
    )


def linear_surrogate_gd(
    ts: TrainingSet, phi: Activation, gamma: float, steps: int
) -> list[Matrix]:
    """
    Iterates B⁽⁰⁾ … B⁽ˢᵗᵉᵖˢ⁾ of linear GD towards B x⁽ⁱ⁾ = φ⁻¹(x⁽ⁱ⁾).

    Started from zero with the same γ, these bound the adaptive iterates
    entrywise in magnitude.
    """
    if not gamma > 0.0:
        raise InvalidInputError(f"learning rate must be positive, got {gamma}")
    x = ts.examples
    targets = phi.inverse(x)
    b = np.zeros((ts.d, ts.d))
    iterates = [b]
    for _ in range(steps):
        b = b - gamma * (x @ b.T - targets).T @ x
        iterates.append(b)
    return iterates
