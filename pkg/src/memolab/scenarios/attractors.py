"""
Trained deep autoencoders viewed as dynamical systems: attractor census,
basins of a grid of starts and recovery probabilities.
"""

import numpy as np
from pydantic import Field

from memolab.datagen import GridProbesSpec, SwissRollSpec, UniformBoxSpec, generate
from memolab.dynsys import (
    attractor_census,
    default_recovery_eps,
    iterate,
    iterate_many,
    recovery_curve,
    superattractor_check,
    trajectories_frame,
)
from memolab.net_engine import InitializerSpec, fully_connected_stack
from memolab.nonlinear_fc import ActivationKind

from .registry import RunContext, ScenarioParams, scenario


class AttractorParams(ScenarioParams):
    width: int = Field(default=128, ge=1)
    depth: int = Field(default=7, ge=1)
    activation: ActivationKind = ActivationKind.LEAKY_RELU
    initializer: InitializerSpec = InitializerSpec()
    margin: float = Field(default=0.05, ge=0.0)
    grid_count: int = Field(default=10, ge=1, description="grid starts per axis")
    iterate_steps: int = Field(default=2000, ge=1)
    trajectory_starts: int = Field(default=5, ge=0)
    trajectory_steps: int = Field(default=50, ge=1)


@scenario(
    "swiss-roll-attractors",
    "Deep FC autoencoder on swiss-roll points: which examples attract, and where probes land",
    AttractorParams,
    plots=(("trajectories", "trajectory_2d"),),
)
def run_attractors(ctx: RunContext, p: AttractorParams) -> None:
    ts = ctx.dataset(SwissRollSpec(n=20))
    spec = ctx.network_spec(
        fully_connected_stack(
            ts.d,
            p.width,
            p.depth,
            activation=p.activation.value,
            initializer=p.initializer,
            seed=ctx.seed,
        )
    )
    fit = ctx.fit(spec, ts)
    net = fit.network
    eps = default_recovery_eps(ts)

    census = attractor_census(net, ts, p.margin)
    captures = superattractor_check(net, ts, eps=eps, seed=ctx.seed)

    grid = generate(
        GridProbesSpec(ranges=[(0.0, 1.0)] * ts.d, counts=[p.grid_count] * ts.d)
    ).examples
    final = iterate_many(net, grid, p.iterate_steps)[-1]
    with np.errstate(invalid="ignore"):
        dist = np.linalg.norm(final[:, None, :] - ts.examples[None, :, :], axis=-1)
    dist = np.where(np.isfinite(dist), dist, np.inf)
    landed = dist.min(axis=1) < eps
    nearest = np.argmin(dist, axis=1)
    landed_fraction = float(np.mean(landed))

    for i, (fp, cap) in enumerate(zip(census, captures, strict=True)):
        ctx.record(
            example_id=i,
            classification=fp.classification.value,
            top_magnitude=fp.top_magnitude,
            radius_is_bound=fp.radius_is_bound,
            residual=fp.residual,
            is_fixed_point=fp.is_fixed_point,
            captured_fraction=cap.captured_fraction,
            is_superattractor=cap.is_superattractor,
            basin_share=float(np.mean(landed & (nearest == i))),
            grid_points=len(grid),
            grid_landed_fraction=landed_fraction,
            recovery_eps=eps,
            final_loss=fit.final_loss,
            train_steps=fit.steps,
            converged=fit.converged,
        )

    rng = np.random.default_rng(ctx.seed)
    starts = rng.uniform(0.0, 1.0, size=(p.trajectory_starts, ts.d))
    trajectories = [iterate(net, x0, p.trajectory_steps, ts, eps) for x0 in starts]
    if trajectories:
        frame = trajectories_frame(trajectories, with_coordinates=True)
        for row in frame.to_dict("records"):
            ctx.record("trajectories", **row)


class RecoveryParams(ScenarioParams):
    width: int = Field(default=64, ge=1)
    depth: int = Field(default=5, ge=1)
    activation: ActivationKind = ActivationKind.LEAKY_RELU
    initializer: InitializerSpec = InitializerSpec()
    test_points: int = Field(default=200, ge=1)
    eps_factors: list[float] = Field(default=[0.5, 1.0, 2.0], min_length=1)
    t_max: int = Field(default=50, ge=1)


@scenario(
    "recovery-sweep",
    "Recovery probability R_t of a trained autoencoder for several ε",
    RecoveryParams,
    plots=(("results", "recovery_curve"),),
)
def run_recovery(ctx: RunContext, p: RecoveryParams) -> None:
    ts = ctx.dataset(SwissRollSpec(n=10))
    spec = ctx.network_spec(
        fully_connected_stack(
            ts.d,
            p.width,
            p.depth,
            activation=p.activation.value,
            initializer=p.initializer,
            seed=ctx.seed,
        )
    )
    fit = ctx.fit(spec, ts)
    probes = generate(
        UniformBoxSpec(n=p.test_points, d=ts.d, low=0.0, high=1.0, seed=ctx.seed + 1)
    )
    base = default_recovery_eps(ts)
    for factor in sorted(p.eps_factors):
        eps = factor * base
        curve = recovery_curve(fit.network, ts, probes, eps, p.t_max)
        for t, value in enumerate(curve, start=1):
            ctx.record(
                eps=eps,
                t=t,
                recovery_probability=float(value),
                final_loss=fit.final_loss,
            )
