"""
Full-batch gradient descent for the single-layer linear autoencoder
x ↦ A x on the loss ½ Σᵢ ‖A x⁽ⁱ⁾ − x⁽ⁱ⁾‖².

The gradient step is the affine recurrence A ← A (I − γS) + γS, which
started from zero has the closed form Q (I − (I − γΛ)ᵗ) Qᵀ and converges to
the orthogonal projector onto span{x⁽ⁱ⁾}.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from memolab.errors import DivergenceError, InvalidInputError
from memolab.numkit import Matrix, Vector, as_square, range_projector, svd, sym_eig

from .training_set import TrainingSet, covariance

logger = logging.getLogger(__name__)

StepCallback = Callable[[int, Matrix], None]

# rises smaller than this fraction of the initial loss are rounding noise
RISE_FLOOR = 1e-14


class _DivergenceGuard:
    """Tracks the loss of successive iterates and the last one that did not rise."""

    def __init__(self, start: Matrix, start_loss: float, gamma: float, window: int):
        self.stable = start
        self.first = start_loss
        self.last = start_loss
        self.gamma = gamma
        self.window = window
        self.rising = 0

    def check(self, step: int, a: Matrix, loss: float) -> None:
        """
        Raises:
            DivergenceError: If ``loss`` is non-finite or has risen for
                ``window`` consecutive steps
        """
        if not np.isfinite(loss):
            raise DivergenceError(
                f"loss became non-finite at step {step}",
                last_stable=self.stable,
                diagnostics={"gamma": self.gamma, "step": step},
            )
        if loss > self.last + RISE_FLOOR * self.first:
            self.rising += 1
            if self.rising >= self.window:
                raise DivergenceError(
                    f"loss increased for {self.rising} consecutive steps (gamma={self.gamma:g})",
                    last_stable=self.stable,
                    diagnostics={"gamma": self.gamma, "step": step, "loss": loss},
                )
        else:
            self.rising = 0
            self.stable = a
        self.last = loss


@dataclass(frozen=True)
class LinearGdRun:
    """Outcome of ``gd_linear``; ``loss_history[t]`` is the loss of A⁽ᵗ⁾."""

    weights: Matrix
    steps_taken: int
    loss_history: Vector
    gamma: float
    converged: bool


def reconstruction_loss(a: Matrix, ts: TrainingSet) -> float:
    """½ Σᵢ ‖A x⁽ⁱ⁾ − x⁽ⁱ⁾‖²."""
    residual = ts.examples @ a.T - ts.examples
    return 0.5 * float(np.sum(residual * residual))


def default_learning_rate(ts: TrainingSet, safety: float = 0.9) -> float:
    """``safety / λ₁(S)``, safely inside the stable range (0, 2/λ₁)."""
    top = float(sym_eig(covariance(ts)).values[0])
    if top <= 0.0:
        raise InvalidInputError("training set spans nothing: all examples are zero")
    return safety / top


def _check_gamma(gamma: float) -> None:
    if not gamma > 0.0:
        raise InvalidInputError(f"learning rate must be positive, got {gamma}")


def gd_linear(
    ts: TrainingSet,
    gamma: float | None = None,
    max_steps: int = 100_000,
    stop_loss: float = 1e-12,
    weight_tol: float = 1e-10,
    divergence_window: int = 10,
) -> LinearGdRun:
    """
    Train A from zero by gradient descent.

    Stops when the loss drops below ``stop_loss`` or the relative weight
    change drops below ``weight_tol``. Pass 0 for both to run exactly
    ``max_steps`` steps.

    Raises:
        InvalidInputError: If ``gamma`` is not positive
        DivergenceError: If the loss grows for ``divergence_window``
            consecutive steps or turns non-finite
    """
    if gamma is None:
        gamma = default_learning_rate(ts)
    _check_gamma(gamma)

    s = covariance(ts)
    damp = np.eye(ts.d) - gamma * s
    pull = gamma * s

    a = np.zeros((ts.d, ts.d))
    history = [reconstruction_loss(a, ts)]
    guard = _DivergenceGuard(a, history[0], gamma, divergence_window)
    converged = False
    steps = 0

    for steps in range(1, max_steps + 1):
        nxt = a @ damp + pull
        loss = reconstruction_loss(nxt, ts)
        guard.check(steps, nxt, loss)

        change = np.linalg.norm(nxt - a) / max(np.linalg.norm(nxt), 1e-300)
        a = nxt
        history.append(loss)
        if loss < stop_loss or change < weight_tol:
            converged = True
            break

    logger.info(
        "gd_linear: n=%d d=%d gamma=%.3g steps=%d loss=%.3e",
        ts.n,
        ts.d,
        gamma,
        steps,
        history[-1],
    )
    return LinearGdRun(
        weights=a,
        steps_taken=steps,
        loss_history=np.asarray(history),
        gamma=gamma,
        converged=converged,
    )


def gd_linear_closed_form(
    ts: TrainingSet,
    gamma: float,
    t: int | None,
    rel_tol: float = 1e-10,
) -> Matrix:
    """
    Closed-form iterate Q (I − (I − γΛ)ᵗ) Qᵀ of GD from zero.

    ``t=None`` returns the t → ∞ limit, keeping eigen-directions whose
    eigenvalue exceeds ``rel_tol`` times the largest.
    """
    _check_gamma(gamma)
    if t is not None and t < 0:
        raise InvalidInputError(f"step count must be non-negative, got {t}")
    eig = sym_eig(covariance(ts))
    lam = eig.values
    if t is None:
        top = lam[0] if lam.size else 0.0
        factor = (lam > rel_tol * top).astype(np.float64) if top > 0 else np.zeros_like(lam)
    else:
        factor = 1.0 - (1.0 - gamma * lam) ** t
    q = eig.vectors
    return (q * factor) @ q.T


def min_norm_projection(ts: TrainingSet, rel_tol: float = 1e-8) -> Matrix:
    """Orthogonal projector onto span{x⁽ⁱ⁾}, rank from the SVD of the stacked examples."""
    return range_projector(ts.examples, rel_tol=rel_tol)


def gd_linear_from(
    ts: TrainingSet,
    init: Matrix,
    gamma: float,
    steps: int,
    callback: StepCallback | None = None,
    divergence_window: int = 10,
) -> Matrix:
    """
    Run ``steps`` GD steps starting from ``init`` instead of zero.

    ``callback(t, A⁽ᵗ⁾)`` is called after every step. Directions orthogonal
    to the training span keep the action of ``init``.

    Raises:
        InvalidInputError: If ``gamma`` is not positive or ``init`` is not d×d
        DivergenceError: If the loss grows for ``divergence_window``
            consecutive steps or turns non-finite
    """
    _check_gamma(gamma)
    a = as_square(init, "init")
    if a.shape[0] != ts.d:
        raise InvalidInputError(f"init must be {ts.d}×{ts.d}, got {a.shape}")
    s = covariance(ts)
    damp = np.eye(ts.d) - gamma * s
    pull = gamma * s
    guard = _DivergenceGuard(a, reconstruction_loss(a, ts), gamma, divergence_window)
    for t in range(1, steps + 1):
        a = a @ damp + pull
        guard.check(t, a, reconstruction_loss(a, ts))
        if callback is not None:
            callback(t, a)
    return a


def perturbation_bound(a: Matrix, projector: Matrix, init: Matrix) -> Vector:
    """
    Margins σᵢ(P) + σ₁(A₀) − σᵢ(A) of the singular-value bound for GD from A₀.

    Every entry is non-negative (up to rounding) when the bound holds.
    """
    sigma_a = svd(a).sigma
    sigma_p = svd(projector).sigma
    top_init = float(svd(init).sigma[0])
    return sigma_p + top_init - sigma_a
