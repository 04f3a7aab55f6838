"""
One-dimensional robustness: an exact ReLU interpolant whose training
points attract.
"""

import numpy as np
from pydantic import Field, model_validator

from memolab.datagen import UnitIntervalSpec, generate
from memolab.robustness import (
    construct_interpolant,
    expected_reconstruction_error,
    interpolant_attractor_check,
    interpolant_frame,
    pointwise_error_bound,
    to_relu_network,
)

from .registry import RunContext, ScenarioParams, scenario


class InterpolantParams(ScenarioParams):
    configs: int = Field(default=10, ge=1)
    max_points: int = Field(default=5, ge=1)
    eps_low: float = Field(default=0.01, gt=0.0)
    eps_high: float = Field(default=0.1, gt=0.0)
    grid_points: int = Field(default=10_000, ge=2)
    frame_points: int = Field(default=1001, ge=2)
    attractor_starts: int = Field(default=200, ge=1)

    @model_validator(mode="after")
    def validate_eps_range(self) -> "InterpolantParams":
        """Require eps_low <= eps_high."""
        if self.eps_low > self.eps_high:
            raise ValueError(f"eps_low ({self.eps_low}) exceeds eps_high ({self.eps_high})")
        return self


@scenario(
    "robust-interpolant",
    "Piecewise-linear interpolants: reconstruction error, attracting training points, ReLU form",
    InterpolantParams,
    plots=(("interpolant", "interpolant"),),
)
def run_interpolant(ctx: RunContext, p: InterpolantParams) -> None:
    rng = np.random.default_rng(ctx.seed)
    grid = np.linspace(0.0, 1.0, p.grid_points)
    for k in range(p.configs):
        n = int(rng.integers(1, p.max_points + 1))
        requested = float(rng.uniform(p.eps_low, p.eps_high))
        points = generate(UnitIntervalSpec(n=n, seed=ctx.seed + k)).examples[:, 0]
        f = construct_interpolant(points, requested)
        net = to_relu_network(f)
        relu_error = float(np.max(np.abs(net.forward(grid[:, None])[:, 0] - f(grid))))
        attractors = interpolant_attractor_check(f, starts=p.attractor_starts, seed=ctx.seed + k)
        ctx.record(
            config_id=k,
            n=n,
            requested_epsilon=requested,
            epsilon=f.epsilon,
            delta=f.delta,
            quadrature_loss=expected_reconstruction_error(f),
            max_train_slope=float(np.max(np.abs(attractors.train_slopes))),
            pointwise_error=pointwise_error_bound(f),
            relu_max_error=relu_error,
            hidden_units=net.spec.layers[0].output_size,
            all_attracting=attractors.all_attracting,
            all_converged=attractors.all_converged,
        )
        if k == 0:
            for row in interpolant_frame(f, p.frame_points).to_dict("records"):
                ctx.record("interpolant", config_id=k, **row)
