"""
Nonlinear fully connected scenarios: the single-layer φ-memorization run
and the wide two-layer limit.
"""

import numpy as np
from pydantic import Field

from memolab.datagen import UniformBoxSpec
from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.net_engine import two_layer_fixed_hidden
from memolab.nonlinear_fc import (
    Activation,
    ActivationKind,
    AdaptiveGdConfig,
    adaptive_gd,
    check_assumption1,
    constant_lr_gd,
    phi_eigencheck,
    phi_span_membership,
)
from memolab.numkit import numerical_rank
from memolab.utils import parallel_map

from .registry import RunContext, ScenarioParams, scenario


class SingleLayerParams(ScenarioParams):
    activation: ActivationKind = ActivationKind.SIGMOID
    n: int = Field(default=2, ge=1)
    d: int = Field(default=5, ge=1)
    low: float = 0.05
    high: float = 0.45
    tol: float = Field(default=1e-8, gt=0.0)
    max_steps: int = Field(default=1_000_000, ge=1)
    probes: int = Field(default=100, ge=0)
    probe_std: float = Field(default=0.5, gt=0.0)
    span_tol: float = Field(default=1e-4, gt=0.0)
    compare_constant_rate: bool = True


@scenario(
    "nonlinear-single-layer",
    "Adaptive GD on φ(Ax) = x: rank, φ-eigenvectors and φ-span of outputs",
    SingleLayerParams,
)
def run_single_layer(ctx: RunContext, p: SingleLayerParams) -> None:
    phi = Activation(kind=p.activation)
    ts = ctx.dataset(UniformBoxSpec(n=p.n, d=p.d, low=p.low, high=p.high))
    report = check_assumption1(ts, phi)
    if not report.passed:
        raise InvalidInputError(
            "dataset violates the memorization assumption: " + "; ".join(report.failures())
        )

    cfg = AdaptiveGdConfig.from_training_set(ts, phi, max_steps=p.max_steps, tol=p.tol)
    result = adaptive_gd(ts, phi, cfg)
    a = result.weights
    pre_error = np.max(np.abs(ts.examples @ a.T - phi.inverse(ts.examples)), axis=1)
    rank = numerical_rank(a)

    rng = np.random.default_rng(ctx.seed)
    images = phi(rng.normal(0.0, p.probe_std, size=(p.probes, ts.d)) @ a.T)
    members = [phi_span_membership(ts, phi, y, p.span_tol) for y in images]
    in_span = float(np.mean([m.member for m in members])) if members else float("nan")
    worst_span = max((m.distance for m in members), default=float("nan"))

    constant_gap = float("nan")
    if p.compare_constant_rate:
        constant = constant_lr_gd(ts, phi, max_steps=p.max_steps, tol=p.tol)
        constant_gap = float(np.linalg.norm(constant.weights - a))

    for i, x in enumerate(ts.examples):
        eig = phi_eigencheck(a, phi, x)
        ctx.record(
            example_id=i,
            preimage_error=float(pre_error[i]),
            phi_eigenvalue=eig.eigenvalue,
            eigen_residual=eig.residual,
            is_phi_eigenvector=eig.is_eigenvector,
            rank=rank,
            steps=result.steps,
            converged=result.converged,
            monotone=result.monotone,
            gamma=result.gamma,
            probes_in_span=in_span,
            worst_span_distance=worst_span,
            constant_rate_gap=constant_gap,
        )


class WidthLimitParams(ScenarioParams):
    d: int = Field(default=10, ge=1)
    widths: list[int] = Field(default=[100, 1000, 10_000], min_length=1)
    seeds: int = Field(default=20, ge=1)


@scenario(
    "appendixC-limit",
    "Wide two-layer ReLU nets with a frozen random layer: Jacobian eigenvalue vs width",
    WidthLimitParams,
)
def run_width_limit(ctx: RunContext, p: WidthLimitParams) -> None:
    rng = np.random.default_rng(ctx.seed)
    x = rng.standard_normal(p.d)
    ts = TrainingSet.from_vectors([x / np.linalg.norm(x)])
    jobs = [(width, ctx.seed + k) for width in p.widths for k in range(p.seeds)]
    reports = parallel_map(lambda job: two_layer_fixed_hidden(ts, *job), jobs)
    for (width, init_seed), report in zip(jobs, reports, strict=True):
        top = float(report.top_eigenvalues[0])
        limit = float(report.limit_predictions[0])
        ctx.record(
            width=width,
            init_seed=init_seed,
            top_eigenvalue=top,
            limit_prediction=limit,
            gap=abs(top - limit),
            stable=top < 1.0,
        )
