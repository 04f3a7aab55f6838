"""
Full-batch training loop and finite-difference gradient checking.
"""

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from memolab.errors import DivergenceError
from memolab.linear_fc import TrainingSet
from memolab.numkit import Vector

from .network import Network
from .optim import build_optimizer
from .specs import GradientDescentSpec, OptimizerSpec

logger = logging.getLogger(__name__)


class StopReason(StrEnum):
    LOSS_BELOW_TARGET = "loss_below_target"
    STEP_BUDGET = "step_budget"


@dataclass(frozen=True)
class TrainReport:
    """``loss_history[t]`` is the loss before step t+1; the last entry is final."""

    network: Network
    final_loss: float
    steps: int
    loss_history: Vector
    converged: bool
    stop_reason: StopReason


def train(
    net: Network,
    ts: TrainingSet,
    optimizer: OptimizerSpec | None = None,
    stop_loss: float = 1e-6,
    max_steps: int = 100_000,
    log_every: int = 1000,
) -> TrainReport:
    """
    Minimise Σᵢ ‖f(x⁽ⁱ⁾) − x⁽ⁱ⁾‖² with full-batch updates.

    The input network is left untouched; the report carries the trained copy.

    Raises:
        DivergenceError: If the loss turns non-finite; ``last_stable`` is the
            network at the last finite loss
    """
    optimizer = optimizer or GradientDescentSpec()
    opt = build_optimizer(optimizer)
    params = [[t.copy() for t in ts_] for ts_ in net.params]
    current = net.with_params(params)
    history: list[float] = []
    steps = 0

    while True:
        loss, grads = current.loss_and_grad(ts)
        if not np.isfinite(loss):
            last = history[-1] if history else float("nan")
            raise DivergenceError(
                f"loss became non-finite at step {steps}",
                last_stable=previous if steps else net,
                diagnostics={"step": steps, "last_finite_loss": last},
            )
        history.append(loss)
        if loss < stop_loss:
            reason = StopReason.LOSS_BELOW_TARGET
            break
        if steps >= max_steps:
            reason = StopReason.STEP_BUDGET
            break
        previous = current
        current = current.with_params(opt.step(current.params, grads))
        steps += 1
        if steps % log_every == 0:
            logger.debug("train step=%d loss=%.3e", steps, loss)

    logger.info(
        "train: depth=%d steps=%d loss=%.3e (%s)",
        net.spec.depth,
        steps,
        history[-1],
        reason.value,
    )
    return TrainReport(
        network=current,
        final_loss=history[-1],
        steps=steps,
        loss_history=np.asarray(history),
        converged=reason is StopReason.LOSS_BELOW_TARGET,
        stop_reason=reason,
    )


def gradcheck(
    net: Network,
    ts: TrainingSet,
    probes: int = 20,
    h: float = 1e-6,
    seed: int = 0,
) -> float:
    """
    Largest relative error between reverse-mode and central-difference
    derivatives of the loss over ``probes`` random parameter entries.

    The relative error is |a − n| / max(|a|, |n|, 1e-3).
    """
    rng = np.random.default_rng(seed)
    _, grads = net.loss_and_grad(ts)
    slots = [
        (k, j) for k, tensors in enumerate(net.params) for j in range(len(tensors))
    ]
    if not slots:
        return 0.0
    worst = 0.0
    for _ in range(probes):
        k, j = slots[rng.integers(len(slots))]
        idx = tuple(int(rng.integers(dim)) for dim in net.params[k][j].shape)
        probe = net.copy()
        original = probe.params[k][j][idx]
        probe.params[k][j][idx] = original + h
        up = probe.loss(ts)
        probe.params[k][j][idx] = original - h
        down = probe.loss(ts)
        numeric = (up - down) / (2.0 * h)
        analytic = float(grads[k][j][idx])
        err = abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-3)
        worst = max(worst, err)
    return worst
