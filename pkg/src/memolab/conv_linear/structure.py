"""
Structural zeros of deep stride-1 convolutional stacks.
"""

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError

from .operators import ConvFilterParams, create_filter_matrix, interior_indices


def forced_zero_mask(layers: int, side: int) -> npt.NDArray[np.bool_]:
    """
    Interior non-zero pattern (side² × side²) of a product of ``layers``
    generic 3×3 stride-1 convolutions. ``False`` marks a forced zero.
    """
    if layers < 1 or side < 1:
        raise InvalidInputError(
            f"layers and side must be positive, got layers={layers}, side={side}"
        )
    op = create_filter_matrix(ConvFilterParams(np.ones((1, 1, 9)), side))
    single = op.mask.astype(np.int64)
    mask = single
    for _ in range(layers - 1):
        mask = np.minimum(single @ mask, 1)
    inner = interior_indices(side)
    return mask[np.ix_(inner, inner)] > 0


def forced_zero_count(layers: int, side: int) -> int:
    """Entries of the interior end-to-end operator that are zero for every choice of filters."""
    return int(np.count_nonzero(~forced_zero_mask(layers, side)))


def heuristic_depth(side: int) -> int:
    """⌈s⁴/9⌉: layers whose 9·L parameters match the s⁴ operator entries."""
    if side < 1:
        raise InvalidInputError(f"side must be positive, got {side}")
    return -(-(side**4) // 9)
