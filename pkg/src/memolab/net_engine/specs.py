"""
Pydantic descriptions of networks, initializers and optimizers.

These are pure configuration: ``Network`` turns a ``NetworkSpec`` into
parameters and runnable layers.
"""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from memolab.errors import InvalidInputError
from memolab.nonlinear_fc import Activation, ActivationKind


class ActivationSpec(BaseModel):
    """Activation applied after a layer's affine part."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: ActivationKind = Field(default=ActivationKind.IDENTITY)
    alpha: float = Field(default=0.01, gt=0.0, lt=1.0, description="leaky slope")

    def build(self) -> Activation:
        return Activation(kind=self.name, alpha=self.alpha)


class FullyConnectedSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["fully_connected"] = "fully_connected"
    in_features: int = Field(..., ge=1)
    out_features: int = Field(..., ge=1)
    activation: ActivationSpec = Field(default_factory=ActivationSpec)
    bias: bool = False

    @property
    def input_size(self) -> int:
        return self.in_features

    @property
    def output_size(self) -> int:
        return self.out_features


class ConvSpec(BaseModel):
    """3×3 convolution, zero padding 1, on ``in_channels`` square images of ``side``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["conv"] = "conv"
    in_channels: int = Field(..., ge=1)
    out_channels: int = Field(..., ge=1)
    side: int = Field(..., ge=1)
    stride: Literal[1, 2] = 1
    activation: ActivationSpec = Field(default_factory=ActivationSpec)
    bias: bool = False

    @model_validator(mode="after")
    def validate_stride(self) -> "ConvSpec":
        """Require the side to be divisible by the stride."""
        if self.side % self.stride:
            raise ValueError(f"side {self.side} is not divisible by stride {self.stride}")
        return self

    @property
    def out_side(self) -> int:
        return self.side // self.stride

    @property
    def input_size(self) -> int:
        return self.in_channels * self.side * self.side

    @property
    def output_size(self) -> int:
        return self.out_channels * self.out_side * self.out_side


class UpsampleSpec(BaseModel):
    """Nearest-neighbour upsampling by an integer ``scale``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["upsample"] = "upsample"
    channels: int = Field(..., ge=1)
    side: int = Field(..., ge=1)
    scale: int = Field(default=2, ge=1)

    @property
    def out_side(self) -> int:
        return self.side * self.scale

    @property
    def input_size(self) -> int:
        return self.channels * self.side * self.side

    @property
    def output_size(self) -> int:
        return self.channels * self.out_side * self.out_side


LayerSpec = Annotated[
    FullyConnectedSpec | ConvSpec | UpsampleSpec, Field(discriminator="kind")
]

InitializerName = Literal[
    "zeros",
    "constant",
    "xavier_uniform",
    "xavier_normal",
    "kaiming_uniform",
    "kaiming_normal",
    "framework_default",
    "normal",
]


class InitializerSpec(BaseModel):
    """``value`` is ε for ``constant``; ``std`` is σ for ``normal``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: InitializerName = "xavier_uniform"
    value: float = 0.1
    std: float = Field(default=0.01, gt=0.0)


class NetworkSpec(BaseModel):
    """Layer stack, skip-connection period, initializer and seed of an autoencoder."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    layers: list[LayerSpec] = Field(..., min_length=1)
    skip_every: int | None = Field(default=None, ge=1)
    initializer: InitializerSpec = Field(default_factory=InitializerSpec)
    seed: int = 0

    @model_validator(mode="after")
    def validate_shapes(self) -> "NetworkSpec":
        """Check layer sizes chain, the map is square and skip blocks preserve size."""
        for k in range(1, len(self.layers)):
            prev, cur = self.layers[k - 1], self.layers[k]
            if prev.output_size != cur.input_size:
                raise ValueError(
                    f"layer {k} expects {cur.input_size} inputs but layer {k - 1} "
                    f"produces {prev.output_size}"
                )
        if self.layers[0].input_size != self.layers[-1].output_size:
            raise ValueError(
                f"autoencoder must map R^d to R^d: input {self.layers[0].input_size}, "
                f"output {self.layers[-1].output_size}"
            )
        if self.skip_every is not None:
            for start, stop in self.skip_blocks():
                if self.layers[start].input_size != self.layers[stop - 1].output_size:
                    raise ValueError(
                        f"skip block over layers {start}..{stop - 1} changes size"
                    )
        return self

    def skip_blocks(self) -> list[tuple[int, int]]:
        """Half-open layer ranges wrapped by an identity skip connection."""
        if self.skip_every is None:
            return []
        n = len(self.layers)
        step = self.skip_every
        return [(s, s + step) for s in range(0, n - step + 1, step)]

    @property
    def input_dim(self) -> int:
        return self.layers[0].input_size

    @property
    def depth(self) -> int:
        return len(self.layers)


class GradientDescentSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["gd"] = "gd"
    lr: float = Field(default=0.1, gt=0.0)


class AdamSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["adam"] = "adam"
    lr: float = Field(default=1e-4, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)


OptimizerSpec = Annotated[GradientDescentSpec | AdamSpec, Field(discriminator="kind")]


def fully_connected_stack(
    dim: int,
    width: int,
    depth: int,
    activation: str = "leaky_relu",
    bias: bool = False,
    initializer: InitializerSpec | None = None,
    skip_every: int | None = None,
    seed: int = 0,
) -> NetworkSpec:
    """
    ``depth`` fully connected layers d → width → … → width → d.

    Hidden layers use ``activation``; the last layer is linear.
    """
    if depth < 1:
        raise InvalidInputError(f"depth must be >= 1, got {depth}")
    act = ActivationSpec(name=ActivationKind(activation))
    sizes = [dim] + [width] * (depth - 1) + [dim]
    layers = [
        FullyConnectedSpec(
            in_features=sizes[k],
            out_features=sizes[k + 1],
            activation=act if k < depth - 1 else ActivationSpec(),
            bias=bias,
        )
        for k in range(depth)
    ]
    return NetworkSpec(
        layers=layers,
        skip_every=skip_every,
        initializer=initializer or InitializerSpec(),
        seed=seed,
    )


def conv_stack(
    side: int,
    depth: int,
    channels: int = 1,
    filters: int = 1,
    activation: str = "identity",
    initializer: InitializerSpec | None = None,
    skip_every: int | None = None,
    seed: int = 0,
) -> NetworkSpec:
    """
    ``depth`` stride-1 conv layers on ``channels``-channel images.

    Hidden layers carry ``filters`` channels; the last layer maps back to
    ``channels``.
    """
    if depth < 1:
        raise InvalidInputError(f"depth must be >= 1, got {depth}")
    act = ActivationSpec(name=ActivationKind(activation))
    widths = [channels] + [filters] * (depth - 1) + [channels]
    layers = [
        ConvSpec(
            in_channels=widths[k],
            out_channels=widths[k + 1],
            side=side,
            activation=act if k < depth - 1 else ActivationSpec(),
        )
        for k in range(depth)
    ]
    return NetworkSpec(
        layers=layers,
        skip_every=skip_every,
        initializer=initializer or InitializerSpec(),
        seed=seed,
    )
