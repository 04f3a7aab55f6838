"""
Convolutional scenarios: linearized operators, their spectra after
training, structural zeros and the downsampling shortcut.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from memolab.conv_linear import (
    ConvFilterParams,
    create_filter_matrix,
    create_upsampling_matrix,
    forced_zero_count,
    heuristic_depth,
    interior_indices,
    linearize_network,
    spectrum,
)
from memolab.datagen import GaussianImagesSpec, generate
from memolab.errors import InvalidInputError
from memolab.linear_fc import min_norm_projection
from memolab.net_engine import (
    AdamSpec,
    ConvLayer,
    ConvSpec,
    GradientDescentSpec,
    InitializerSpec,
    NetworkSpec,
    UpsampleLayer,
    UpsampleSpec,
    conv_stack,
)

from .registry import RunContext, ScenarioParams, scenario


class SpectrumRow(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    side: int = Field(..., ge=1)
    examples: int = Field(..., ge=1)
    layers: int = Field(..., ge=1)
    filters: int = Field(default=1, ge=1)
    skip_every: int | None = Field(default=None, ge=1)


class SpectrumParams(ScenarioParams):
    rows: list[SpectrumRow] = Field(..., min_length=1)
    initializer: InitializerSpec = InitializerSpec(name="constant", value=0.1)
    gd_lr: float = Field(default=0.1, gt=0.0)
    adam_lr: float = Field(default=1e-4, gt=0.0)
    adam_above: int = Field(default=10, ge=1, description="use Adam beyond this depth")
    tail_threshold: float = Field(default=1e-2, ge=0.0)
    rank_tol: float = Field(default=1e-4, gt=0.0)


def _row_label(row: SpectrumRow) -> str:
    return f"s{row.side}_n{row.examples}_L{row.layers}_f{row.filters}"


def _magnitude(mags: np.ndarray, k: int) -> float:
    return float(mags[k]) if k < mags.size else float("nan")


@scenario(
    "table1-rows",
    "3×3 conv stacks on two images: more filters do not buy memorization",
    SpectrumParams,
    plots=(("spectrum", "spectrum_bars"),),
)
@scenario(
    "table2-rows",
    "Single-filter conv stacks at the heuristic depth memorize one image",
    SpectrumParams,
    plots=(("spectrum", "spectrum_bars"),),
)
@scenario(
    "table2-row1",
    "2×2 image, 3 single-filter conv layers: spectrum 1, [< 1e-2]",
    SpectrumParams,
    plots=(("spectrum", "spectrum_bars"),),
)
def run_spectrum_rows(ctx: RunContext, p: SpectrumParams) -> None:
    """Train one linear conv stack per row and report its end-to-end spectrum."""
    for k, row in enumerate(p.rows):
        ts = generate(GaussianImagesSpec(side=row.side, n=row.examples, seed=ctx.seed + k))
        spec = conv_stack(
            row.side,
            row.layers,
            filters=row.filters,
            initializer=p.initializer,
            skip_every=row.skip_every,
            seed=ctx.seed,
        )
        optimizer = ctx.config.optimizer or (
            AdamSpec(lr=p.adam_lr) if row.layers > p.adam_above else GradientDescentSpec(lr=p.gd_lr)
        )
        fit = ctx.fit(spec, ts, optimizer)
        report = spectrum(linearize_network(fit.network), p.tail_threshold, p.rank_tol)
        mags = report.magnitudes
        label = _row_label(row)
        ctx.record(
            label=label,
            side=row.side,
            examples=row.examples,
            layers=row.layers,
            filters=row.filters,
            heuristic_depth=heuristic_depth(row.side),
            eig_1=_magnitude(mags, 0),
            eig_2=_magnitude(mags, 1),
            eig_3=_magnitude(mags, 2),
            tail_magnitude=_magnitude(mags, row.examples),
            leading_count=int(report.leading.size),
            rank_estimate=report.rank_estimate,
            final_loss=fit.final_loss,
            train_steps=fit.steps,
            converged=fit.converged,
        )
        for index, value in enumerate(mags, start=1):
            ctx.record("spectrum", label=label, index=index, magnitude=float(value))


class GoldenParams(ScenarioParams):
    oracle_cases: int = Field(default=200, ge=0)
    sides: list[int] = Field(default=[2, 4, 6], min_length=1)
    max_channels: int = Field(default=2, ge=1)


def golden_filter_interior(weights: np.ndarray, side: int) -> np.ndarray:
    """Interior matrix of a single 3×3 filter, entry by entry from pixel offsets."""
    d = side * side
    out = np.zeros((d, d))
    for p in range(d):
        r, c = divmod(p, side)
        for q in range(d):
            qr, qc = divmod(q, side)
            dr, dc = qr - r, qc - c
            if abs(dr) <= 1 and abs(dc) <= 1:
                out[p, q] = weights[3 * (dr + 1) + (dc + 1)]
    return out


def golden_upsampling() -> np.ndarray:
    """The 16×9 matrix upsampling a padded 1×1 image by 2."""
    out = np.zeros((16, 9))
    out[[5, 6, 9, 10], 4] = 1.0
    return out


@scenario(
    "conv-matrix-golden",
    "Linearized conv and upsampling matrices against worked examples and direct evaluation",
    GoldenParams,
)
def run_golden(ctx: RunContext, p: GoldenParams) -> None:
    weights = np.arange(1.0, 10.0)
    op = create_filter_matrix(ConvFilterParams(weights, side=3))
    expected = golden_filter_interior(weights, 3)
    outside = np.setdiff1d(np.arange(op.matrix.shape[0]), interior_indices(3))
    ctx.record(
        check="filter_s3",
        matches=bool(np.array_equal(op.interior(), expected))
        and not np.any(op.matrix[outside]),
        max_abs_error=float(np.max(np.abs(op.interior() - expected))),
    )
    up = create_upsampling_matrix(1, 1, 2).matrix
    ctx.record(
        check="upsample_s1",
        matches=bool(np.array_equal(up, golden_upsampling())),
        max_abs_error=float(np.max(np.abs(up - golden_upsampling()))),
    )

    rng = np.random.default_rng(ctx.seed)
    conv_worst, up_worst = 0.0, 0.0
    for _ in range(p.oracle_cases):
        side = int(rng.choice(p.sides))
        stride = int(rng.choice([1, 2]))
        f_in = int(rng.integers(1, p.max_channels + 1))
        f_out = int(rng.integers(1, p.max_channels + 1))
        kernels = rng.standard_normal((f_out, f_in, 3, 3))
        image = rng.standard_normal(f_in * side * side)

        layer = ConvLayer(ConvSpec(in_channels=f_in, out_channels=f_out, side=side, stride=stride))
        direct = layer.linear_forward([kernels], image[None, :])[0][0]
        linear = create_filter_matrix(
            ConvFilterParams.from_kernels(kernels, side, stride)
        ).interior() @ image
        scale = max(float(np.linalg.norm(direct)), np.finfo(float).tiny)
        conv_worst = max(conv_worst, float(np.linalg.norm(linear - direct)) / scale)

        upsample = UpsampleLayer(UpsampleSpec(channels=f_in, side=side))
        direct_up = upsample.linear_forward([], image[None, :])[0][0]
        linear_up = create_upsampling_matrix(side, f_in).interior() @ image
        up_worst = max(up_worst, float(np.max(np.abs(linear_up - direct_up))))

    if p.oracle_cases:
        ctx.record(check="filter_oracle", matches=conv_worst < 1e-13, max_abs_error=conv_worst)
        ctx.record(check="upsample_oracle", matches=up_worst == 0.0, max_abs_error=up_worst)


class ForcedZeroParams(ScenarioParams):
    sides: list[int] = Field(default=[3, 4, 5, 6], min_length=1)


@scenario(
    "forced-zeros",
    "Structural zeros of deep stride-1 conv stacks and the heuristic depth bound",
    ForcedZeroParams,
)
def run_forced_zeros(ctx: RunContext, p: ForcedZeroParams) -> None:
    for side in p.sides:
        for layers in range(1, max(side, 2)):
            count = forced_zero_count(layers, side)
            ctx.record(
                side=side,
                layers=layers,
                forced_zero_count=count,
                entries=side**4,
                no_forced_zeros=count == 0,
                heuristic_depth=heuristic_depth(side),
            )


class DownsampleParams(ScenarioParams):
    side: int = Field(default=4, ge=2)
    channels: int = Field(default=4, ge=1)
    examples: int = Field(default=2, ge=1)
    initializer: InitializerSpec = InitializerSpec(name="normal", std=0.1)


def downsampling_network(side: int, channels: int, initializer: InitializerSpec, seed: int) -> NetworkSpec:
    """
    Stride-2 convolutions down to 1×1, then upsampling and stride-1
    convolutions back to ``side``. ``side`` must be a power of two.
    """
    if side & (side - 1):
        raise InvalidInputError(f"side must be a power of two, got {side}")
    layers: list[ConvSpec | UpsampleSpec] = []
    s, c_in = side, 1
    while s > 1:
        layers.append(ConvSpec(in_channels=c_in, out_channels=channels, side=s, stride=2))
        s //= 2
        c_in = channels
    while s < side:
        layers.append(UpsampleSpec(channels=channels, side=s))
        s *= 2
        out = 1 if s == side else channels
        layers.append(ConvSpec(in_channels=channels, out_channels=out, side=s))
    return NetworkSpec(layers=layers, initializer=initializer, seed=seed)


@scenario(
    "downsample-equivalence",
    "Strided conv autoencoder through a 1×1 bottleneck vs the FC minimum-norm projector",
    DownsampleParams,
)
def run_downsample(ctx: RunContext, p: DownsampleParams) -> None:
    ts = ctx.dataset(GaussianImagesSpec(side=p.side, n=p.examples))
    spec = ctx.network_spec(
        downsampling_network(p.side, p.channels, p.initializer, ctx.seed)
    )
    fit = ctx.fit(spec, ts)
    operator = linearize_network(fit.network)
    report = spectrum(operator)
    mags = report.magnitudes
    ctx.record(
        side=p.side,
        channels=p.channels,
        examples=ts.n,
        depth=spec.depth,
        projector_gap=float(np.linalg.norm(operator - min_norm_projection(ts))),
        eig_1=_magnitude(mags, 0),
        eig_2=_magnitude(mags, 1),
        eig_3=_magnitude(mags, 2),
        rank_estimate=report.rank_estimate,
        final_loss=fit.final_loss,
        train_steps=fit.steps,
        converged=fit.converged,
    )
