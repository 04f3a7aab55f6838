"""
Convolutional layers as explicit matrices: filter and upsampling operators,
composition, forced zeros of deep stacks and spectra of trained networks.
"""

from .linearize import layer_operator, linearize_network
from .operators import (
    ConvFilterParams,
    LinearizedOp,
    compose,
    create_filter_matrix,
    create_upsampling_matrix,
    interior_indices,
    pad_image,
    save_linearized_op,
)
from .spectrum import SpectrumReport, spectrum
from .structure import forced_zero_count, forced_zero_mask, heuristic_depth

__all__ = [
    "ConvFilterParams",
    "LinearizedOp",
    "interior_indices",
    "pad_image",
    "create_filter_matrix",
    "create_upsampling_matrix",
    "compose",
    "save_linearized_op",
    "forced_zero_mask",
    "forced_zero_count",
    "heuristic_depth",
    "SpectrumReport",
    "spectrum",
    "layer_operator",
    "linearize_network",
]
