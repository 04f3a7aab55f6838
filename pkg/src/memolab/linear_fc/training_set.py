"""
Training sets: n examples of dimension d stored as the rows of an n×d matrix.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError
from memolab.numkit import Matrix, format_matrix, parse_matrix
from memolab.utils.file_utils import read_file, write_file


@dataclass(frozen=True)
class TrainingSet:
    """An ordered list of examples; ``examples[i]`` is x⁽ⁱ⁾."""

    examples: Matrix

    def __post_init__(self) -> None:
        x = np.array(self.examples, dtype=np.float64, order="C")
        if x.ndim != 2:
            raise InvalidInputError(
                f"training set must be an n×d matrix, got shape {x.shape}"
            )
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise InvalidInputError(
                f"training set needs n >= 1 and d >= 1, got {x.shape}"
            )
        if not np.all(np.isfinite(x)):
            raise InvalidInputError("training set contains non-finite values")
        x.setflags(write=False)
        object.__setattr__(self, "examples", x)

    @classmethod
    def from_vectors(cls, vectors: npt.ArrayLike) -> "TrainingSet":
        return cls(np.atleast_2d(np.asarray(vectors, dtype=np.float64)))

    @property
    def n(self) -> int:
        return int(self.examples.shape[0])

    @property
    def d(self) -> int:
        return int(self.examples.shape[1])

    def pairwise_distances(self) -> Matrix:
        diff = self.examples[:, None, :] - self.examples[None, :, :]
        return np.sqrt(np.sum(diff * diff, axis=-1))


def covariance(ts: TrainingSet) -> Matrix:
    """S = Σᵢ x⁽ⁱ⁾ x⁽ⁱ⁾ᵀ (d×d, symmetric positive semidefinite)."""
    x = ts.examples
    s = x.T @ x
    return 0.5 * (s + s.T)


def save_training_set(ts: TrainingSet, path: str | Path) -> None:
    """Write ``"n d"`` followed by one example per line."""
    write_file(str(path), format_matrix(ts.examples))


def load_training_set(path: str | Path) -> TrainingSet:
    """Read a training set written by ``save_training_set``."""
    return TrainingSet(parse_matrix(read_file(str(path)), name=str(path)))
