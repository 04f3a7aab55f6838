"""
Explicit matrices for 3×3 convolution (padding 1, stride 1 or 2) and
nearest-neighbour upsampling acting on zero-padded, channel-major images.

A vector for ``f`` channels of side ``s`` has ``f·(s+2)²`` entries: each
channel is its padded (s+2)×(s+2) frame flattened row by row. Output
frames use the same layout, with padding rows left at zero, so operators
can be multiplied directly.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError
from memolab.numkit import Matrix, format_matrix
from memolab.utils.file_utils import write_file


@dataclass(frozen=True)
class ConvFilterParams:
    """
    Kernel weights ``weights[o, c, k]`` for output filter o, input channel c
    and kernel index k = 3·row + col, applied to images of ``side``.
    """

    weights: npt.NDArray[np.float64]
    side: int
    stride: int = 1

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim == 1:
            w = w.reshape(1, 1, -1)
        if w.ndim != 3 or w.shape[2] != 9:
            raise InvalidInputError(
                f"kernel weights must have shape (f_out, f_in, 9), got {w.shape}"
            )
        if self.side < 1:
            raise InvalidInputError(f"side must be positive, got {self.side}")
        if self.stride not in (1, 2) or self.side % self.stride:
            raise InvalidInputError(
                f"stride {self.stride} incompatible with side {self.side}"
            )
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_kernels(
        cls, kernels: npt.ArrayLike, side: int, stride: int = 1
    ) -> "ConvFilterParams":
        """Build from (f_out, f_in, 3, 3) kernels as stored by the conv layer."""
        k = np.asarray(kernels, dtype=np.float64)
        return cls(k.reshape(k.shape[0], k.shape[1], 9), side, stride)

    @property
    def out_channels(self) -> int:
        return int(self.weights.shape[0])

    @property
    def in_channels(self) -> int:
        return int(self.weights.shape[1])

    @property
    def out_side(self) -> int:
        return self.side // self.stride


@dataclass(frozen=True)
class LinearizedOp:
    """A padded-frame operator and its structural non-zero mask."""

    matrix: Matrix
    mask: npt.NDArray[np.bool_]
    in_side: int
    out_side: int
    in_channels: int
    out_channels: int

    def interior(self) -> Matrix:
        """Restriction to interior pixels: out_channels·out_side² × in_channels·in_side²."""
        rows = interior_indices(self.out_side, self.out_channels)
        cols = interior_indices(self.in_side, self.in_channels)
        return self.matrix[np.ix_(rows, cols)]

    def interior_mask(self) -> npt.NDArray[np.bool_]:
        rows = interior_indices(self.out_side, self.out_channels)
        cols = interior_indices(self.in_side, self.in_channels)
        return self.mask[np.ix_(rows, cols)]


def interior_indices(side: int, channels: int = 1) -> npt.NDArray[np.intp]:
    """Positions of interior pixels inside the padded channel-major layout."""
    padded = side + 2
    inner = np.arange(1, side + 1)
    frame = (inner[:, None] * padded + inner[None, :]).ravel()
    return np.concatenate([c * padded * padded + frame for c in range(channels)])


def pad_image(x: npt.ArrayLike, side: int, channels: int = 1) -> npt.NDArray[np.float64]:
    """Embed an interior vector into the zero-padded layout."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(channels * (side + 2) ** 2)
    out[interior_indices(side, channels)] = x
    return out


def _zero_shift(row: np.ndarray, shift: int) -> np.ndarray:
    """Shift right by ``shift`` places, filling with zeros."""
    if shift == 0:
        return row.copy()
    out = np.zeros_like(row)
    if shift < row.size:
        out[shift:] = row[:-shift]
    return out


def _filter_block(kernel: np.ndarray, side: int, stride: int) -> np.ndarray:
    """
    Operator block of one output filter; ``kernel`` is (f_in, 9).

    Builds the first output row from the kernel, shifts it by ``stride``
    along an output row, and by ``(side+2)·stride`` between output rows.
    """
    padded = side + 2
    resized = side // stride
    f_in = kernel.shape[0]
    row = np.zeros(f_in * padded * padded, dtype=kernel.dtype)
    for c in range(f_in):
        for k in range(9):
            row[c * padded * padded + k % 3 + padded * (k // 3)] = kernel[c, k]

    block = np.zeros(((resized + 2) ** 2, row.size), dtype=kernel.dtype)
    index = resized + 2 + 1
    for _ in range(resized):
        for col_shift in range(resized):
            block[index + col_shift] = _zero_shift(row, stride * col_shift)
        index += resized + 2
        row = _zero_shift(row, padded * stride)
    return block


def create_filter_matrix(p: ConvFilterParams) -> LinearizedOp:
    """
    Linearize a convolutional layer, stacking one block per output filter.

    Output pixel (i, j) of filter o is Σ_c Σ_{a,b} w[o, c, 3a+b] ·
    x_pad[c, stride·i + a, stride·j + b] (cross-correlation).
    """
    blocks = [_filter_block(p.weights[o], p.side, p.stride) for o in range(p.out_channels)]
    structure = np.ones((p.in_channels, 9), dtype=bool)
    mask_block = _filter_block(structure, p.side, p.stride)
    return LinearizedOp(
        matrix=np.vstack(blocks),
        mask=np.vstack([mask_block] * p.out_channels),
        in_side=p.side,
        out_side=p.out_side,
        in_channels=p.in_channels,
        out_channels=p.out_channels,
    )


def create_upsampling_matrix(side: int, channels: int = 1, scale: int = 2) -> LinearizedOp:
    """
    0/1 operator for nearest-neighbour upsampling by ``scale``.

    Each interior input pixel is copied into a scale×scale block of the
    enlarged padded frame; padding rows stay zero.
    """
    if side < 1 or channels < 1 or scale < 1:
        raise InvalidInputError(
            f"side, channels and scale must be positive, got {side}, {channels}, {scale}"
        )
    in_padded = side + 2
    out_padded = side * scale + 2
    up = np.zeros((channels * out_padded**2, channels * in_padded**2))
    index = out_padded + 1
    for c in range(channels):
        for row in range(1, side + 1):
            for _ in range(scale):
                for col in range(1, side + 1):
                    source = col + row * in_padded + c * in_padded**2
                    for _ in range(scale):
                        up[index, source] = 1.0
                        index += 1
                index += 2
        index += 2 * out_padded
    return LinearizedOp(
        matrix=up,
        mask=up != 0.0,
        in_side=side,
        out_side=side * scale,
        in_channels=channels,
        out_channels=channels,
    )


def compose(ops: list[LinearizedOp]) -> LinearizedOp:
    """
    Product ops[-1] ⋯ ops[0] (ops[0] acts first), with the boolean product
    of the masks as the structural mask.
    """
    if not ops:
        raise InvalidInputError("compose needs at least one operator")
    matrix = ops[0].matrix
    mask = ops[0].mask
    for k in range(1, len(ops)):
        prev, op = ops[k - 1], ops[k]
        if op.matrix.shape[1] != matrix.shape[0] or (
            op.in_side,
            op.in_channels,
        ) != (prev.out_side, prev.out_channels):
            raise InvalidInputError(
                f"operator {k} expects {op.matrix.shape[1]} inputs, "
                f"previous produces {matrix.shape[0]}"
            )
        matrix = op.matrix @ matrix
        mask = (op.mask.astype(np.int64) @ mask.astype(np.int64)) > 0
    return LinearizedOp(
        matrix=matrix,
        mask=mask,
        in_side=ops[0].in_side,
        out_side=ops[-1].out_side,
        in_channels=ops[0].in_channels,
        out_channels=ops[-1].out_channels,
    )


def save_linearized_op(op: LinearizedOp, path: str | Path) -> None:
    """Write the matrix in the Matrix text format and its mask as a 0/1 grid beside it."""
    write_file(str(path), format_matrix(op.matrix))
    grid = "\n".join("".join("1" if v else "0" for v in row) for row in op.mask)
    write_file(f"{path}.mask", grid + "\n")
