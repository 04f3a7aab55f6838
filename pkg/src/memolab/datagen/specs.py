"""
Dataset descriptions, one pydantic model per generator kind.
"""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class _DatasetBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = 0
    rescale: tuple[float, float] | None = Field(
        default=None, description="min-max map the generated values into (low, high)"
    )

    @field_validator("rescale")
    @classmethod
    def validate_rescale(cls, v: tuple[float, float] | None) -> tuple[float, float] | None:
        """Require an increasing interval."""
        if v is not None and not v[0] < v[1]:
            raise ValueError(f"rescale interval must be increasing, got {v}")
        return v


class SwissRollSpec(_DatasetBase):
    kind: Literal["swiss_roll_3d"] = "swiss_roll_3d"
    n: int = Field(default=20, ge=1)
    noise: float = Field(default=0.0, ge=0.0)


class WhiteSquareSpec(_DatasetBase):
    """One black image of ``side`` with a white ``square_side`` square in a corner."""

    kind: Literal["white_square_image"] = "white_square_image"
    side: int = Field(default=2, ge=1)
    square_side: int = Field(default=1, ge=1)
    corner: Literal["upper_left", "upper_right", "lower_left", "lower_right"] = (
        "upper_left"
    )

    @model_validator(mode="after")
    def validate_square(self) -> "WhiteSquareSpec":
        """The square must fit inside the image."""
        if self.square_side > self.side:
            raise ValueError(
                f"square side {self.square_side} exceeds image side {self.side}"
            )
        return self


class OrthogonalSquaresSpec(_DatasetBase):
    """Two images with white upper-left and lower-right quadrants."""

    kind: Literal["orthogonal_squares"] = "orthogonal_squares"
    side: int = Field(default=2, ge=2)

    @field_validator("side")
    @classmethod
    def validate_even(cls, v: int) -> int:
        """Quadrants need an even side."""
        if v % 2:
            raise ValueError(f"side must be even, got {v}")
        return v


class GaussianImagesSpec(_DatasetBase):
    """Standard normal pixels, min-max mapped into [0, 1] across the whole set."""

    kind: Literal["gaussian_images"] = "gaussian_images"
    side: int = Field(default=3, ge=1)
    n: int = Field(default=1, ge=1)
    channels: int = Field(default=1, ge=1)


class UnitIntervalSpec(_DatasetBase):
    kind: Literal["unit_interval_points"] = "unit_interval_points"
    n: int = Field(default=5, ge=1)


class UniformBoxSpec(_DatasetBase):
    kind: Literal["uniform_box"] = "uniform_box"
    n: int = Field(default=2, ge=1)
    d: int = Field(default=5, ge=1)
    low: float = 0.05
    high: float = 0.45

    @model_validator(mode="after")
    def validate_bounds(self) -> "UniformBoxSpec":
        """Require low < high."""
        if not self.low < self.high:
            raise ValueError(f"low ({self.low}) must be below high ({self.high})")
        return self


class GridProbesSpec(_DatasetBase):
    kind: Literal["grid_probes"] = "grid_probes"
    ranges: list[tuple[float, float]] = Field(..., min_length=1)
    counts: list[int] = Field(..., min_length=1)

    @model_validator(mode="after")
    def validate_axes(self) -> "GridProbesSpec":
        """One positive count per range."""
        if len(self.ranges) != len(self.counts):
            raise ValueError(
                f"{len(self.ranges)} ranges but {len(self.counts)} counts"
            )
        if any(c < 1 for c in self.counts):
            raise ValueError("grid counts must be positive")
        return self


DatasetSpec = Annotated[
    SwissRollSpec
    | WhiteSquareSpec
    | OrthogonalSquaresSpec
    | GaussianImagesSpec
    | UnitIntervalSpec
    | UniformBoxSpec
    | GridProbesSpec,
    Field(discriminator="kind"),
]
