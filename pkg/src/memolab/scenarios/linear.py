"""
Linear fully connected scenarios: the closed-form cross-check and the
effect of non-zero initialization.
"""

import numpy as np
from pydantic import Field

from memolab.datagen import UniformBoxSpec
from memolab.linear_fc import (
    TrainingSet,
    default_learning_rate,
    gd_linear,
    gd_linear_closed_form,
    gd_linear_from,
    min_norm_projection,
    perturbation_bound,
)
from memolab.net_engine import InitializerSpec, Network, fully_connected_stack
from memolab.net_engine.specs import InitializerName
from memolab.utils import parallel_map

from .registry import RunContext, ScenarioParams, scenario


class ClosedFormParams(ScenarioParams):
    trials: int = Field(default=20, ge=1)
    max_n: int = Field(default=5, ge=1)
    max_d: int = Field(default=12, ge=1)
    steps: int = Field(default=10_000, ge=0)


def _closed_form_trial(ts: TrainingSet, steps: int) -> dict:
    gamma = default_learning_rate(ts)
    run = gd_linear(ts, gamma, max_steps=steps, stop_loss=0.0, weight_tol=0.0)
    closed = gd_linear_closed_form(ts, gamma, run.steps_taken)
    limit = gd_linear_closed_form(ts, gamma, None)
    projector = min_norm_projection(ts)
    return {
        "n": ts.n,
        "d": ts.d,
        "gamma": gamma,
        "steps": run.steps_taken,
        "closed_form_gap": float(np.linalg.norm(run.weights - closed)),
        "limit_gap": float(np.linalg.norm(limit - projector)),
        "final_gap": float(np.linalg.norm(run.weights - projector)),
    }


@scenario(
    "appendixA-closed-form",
    "Linear GD from zero against its closed form and the minimum-norm projector",
    ClosedFormParams,
)
def run_closed_form(ctx: RunContext, p: ClosedFormParams) -> None:
    rng = np.random.default_rng(ctx.seed)
    sets = []
    for _ in range(p.trials):
        n = int(rng.integers(1, p.max_n + 1))
        d = int(rng.integers(1, p.max_d + 1))
        sets.append(TrainingSet(rng.standard_normal((n, d))))
    rows = parallel_map(lambda ts: _closed_form_trial(ts, p.steps), sets)
    for trial, row in enumerate(rows):
        ctx.record(trial=trial, **row)


class InitComparisonParams(ScenarioParams):
    d: int = Field(default=10, ge=2)
    n: int = Field(default=2, ge=1)
    width: int = Field(default=64, ge=1)
    depth: int = Field(default=3, ge=1)
    initializers: list[InitializerName] = [
        "zeros",
        "normal",
        "xavier_uniform",
        "xavier_normal",
        "kaiming_uniform",
        "kaiming_normal",
        "framework_default",
    ]
    normal_std: float = Field(default=1e-2, gt=0.0)
    init_scale: float = Field(default=0.1, gt=0.0)
    steps: int = Field(default=2000, ge=1)
    record_every: int = Field(default=200, ge=1)
    probes: int = Field(default=5, ge=1)


def _orthogonal(vectors: np.ndarray, projector: np.ndarray) -> np.ndarray:
    return vectors - vectors @ projector


@scenario(
    "init-comparison",
    "Output norms under common initializers; linear GD from a rank-one init",
    InitComparisonParams,
)
def run_init_comparison(ctx: RunContext, p: InitComparisonParams) -> None:
    ts = ctx.dataset(UniformBoxSpec(n=p.n, d=p.d, low=0.0, high=1.0))
    for name in p.initializers:
        spec = fully_connected_stack(
            ts.d,
            p.width,
            p.depth,
            initializer=InitializerSpec(name=name, std=p.normal_std),
            seed=ctx.seed,
        )
        norm = Network(spec).output_norm(ts.examples[0])
        ctx.record(check="output_norm", name=name, value=norm)

    if ts.n >= ts.d:
        return
    rng = np.random.default_rng(ctx.seed)
    projector = min_norm_projection(ts)
    u = rng.standard_normal(ts.d)
    v = _orthogonal(rng.standard_normal(ts.d), projector)
    init = p.init_scale * np.outer(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    probes = _orthogonal(rng.standard_normal((p.probes, ts.d)), projector)
    expected = probes @ init.T
    worst = [0.0]

    def track(t: int, a: np.ndarray) -> None:
        drift = float(np.max(np.abs(probes @ a.T - expected)))
        worst[0] = max(worst[0], drift)
        if t % p.record_every == 0:
            ctx.record(check="orthogonal_drift", name=f"step_{t}", value=drift)

    final = gd_linear_from(ts, init, default_learning_rate(ts), p.steps, callback=track)
    ctx.record(check="max_orthogonal_drift", name="all_steps", value=worst[0])
    for i, margin in enumerate(perturbation_bound(final, projector, init)):
        ctx.record(check="singular_value_margin", name=f"sigma_{i + 1}", value=float(margin))
