"""
Robust one-dimensional interpolants: attracting fixed points at every
training point with reconstruction error bounded by ε.
"""

from .interpolant import (
    InterpolantAttractorReport,
    PiecewiseLinear1D,
    construct_interpolant,
    expected_reconstruction_error,
    interpolant_attractor_check,
    interpolant_frame,
    pointwise_error_bound,
    to_relu_network,
)

__all__ = [
    "PiecewiseLinear1D",
    "construct_interpolant",
    "InterpolantAttractorReport",
    "interpolant_attractor_check",
    "expected_reconstruction_error",
    "pointwise_error_bound",
    "interpolant_frame",
    "to_relu_network",
]
