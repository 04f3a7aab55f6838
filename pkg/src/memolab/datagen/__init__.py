"""
Synthetic datasets: swiss roll, white-square images, Gaussian images,
unit-interval points, uniform boxes and probe grids.
"""

from .generators import (
    generate,
    rescale,
    scale_swiss_roll,
    swiss_roll,
    unscale_swiss_roll,
    white_square,
)
from .specs import (
    DatasetSpec,
    GaussianImagesSpec,
    GridProbesSpec,
    OrthogonalSquaresSpec,
    SwissRollSpec,
    UniformBoxSpec,
    UnitIntervalSpec,
    WhiteSquareSpec,
)

__all__ = [
    "DatasetSpec",
    "SwissRollSpec",
    "WhiteSquareSpec",
    "OrthogonalSquaresSpec",
    "GaussianImagesSpec",
    "UnitIntervalSpec",
    "UniformBoxSpec",
    "GridProbesSpec",
    "generate",
    "rescale",
    "swiss_roll",
    "scale_swiss_roll",
    "unscale_swiss_roll",
    "white_square",
]
