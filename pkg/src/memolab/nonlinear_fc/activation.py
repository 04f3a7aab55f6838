"""
Element-wise activations with derivatives, ranges and minimum-norm pre-images.
"""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError

Array = npt.NDArray[np.float64]


class ActivationKind(StrEnum):
    SIGMOID = "sigmoid"
    TANH = "tanh"
    LEAKY_RELU = "leaky_relu"
    RELU = "relu"
    IDENTITY = "identity"


@dataclass(frozen=True)
class Activation:
    """
    An element-wise activation φ.

    ``alpha`` is the negative-side slope and is only read for leaky ReLU.
    At the ReLU kink the right derivative (1) is used.
    """

    kind: ActivationKind
    alpha: float = 0.01

    def __post_init__(self) -> None:
        if self.kind is ActivationKind.LEAKY_RELU and not 0.0 < self.alpha < 1.0:
            raise InvalidInputError(
                f"leaky_relu alpha must lie in (0, 1), got {self.alpha}"
            )

    @classmethod
    def from_name(cls, name: str, alpha: float = 0.01) -> "Activation":
        try:
            kind = ActivationKind(name)
        except ValueError as e:
            known = ", ".join(k.value for k in ActivationKind)
            raise InvalidInputError(
                f"unknown activation {name!r} (expected one of: {known})"
            ) from e
        return cls(kind=kind, alpha=alpha)

    def __call__(self, z: npt.ArrayLike) -> Array:
        z = np.asarray(z, dtype=np.float64)
        match self.kind:
            case ActivationKind.SIGMOID:
                e = np.exp(-np.abs(z))
                return np.where(z >= 0.0, 1.0 / (1.0 + e), e / (1.0 + e))
            case ActivationKind.TANH:
                return np.tanh(z)
            case ActivationKind.LEAKY_RELU:
                return np.where(z >= 0.0, z, self.alpha * z)
            case ActivationKind.RELU:
                return np.maximum(z, 0.0)
            case ActivationKind.IDENTITY:
                return z.copy()

    def derivative(self, z: npt.ArrayLike) -> Array:
        z = np.asarray(z, dtype=np.float64)
        match self.kind:
            case ActivationKind.SIGMOID:
                s = self(z)
                return s * (1.0 - s)
            case ActivationKind.TANH:
                return 1.0 - np.tanh(z) ** 2
            case ActivationKind.LEAKY_RELU:
                return np.where(z >= 0.0, 1.0, self.alpha)
            case ActivationKind.RELU:
                return np.where(z >= 0.0, 1.0, 0.0)
            case ActivationKind.IDENTITY:
                return np.ones_like(z)

    def in_range(self, y: npt.ArrayLike) -> npt.NDArray[np.bool_]:
        y = np.asarray(y, dtype=np.float64)
        match self.kind:
            case ActivationKind.SIGMOID:
                return (y > 0.0) & (y < 1.0)
            case ActivationKind.TANH:
                return (y > -1.0) & (y < 1.0)
            case ActivationKind.RELU:
                return y >= 0.0
            case _:
                return np.isfinite(y)

    def inverse(self, y: npt.ArrayLike) -> Array:
        """
        Minimum-norm pre-image φ⁻¹(y).

        Raises:
            InvalidInputError: If any value lies outside the range of φ
        """
        y = np.asarray(y, dtype=np.float64)
        if not np.all(self.in_range(y)):
            raise InvalidInputError(f"values outside the range of {self.kind.value}")
        match self.kind:
            case ActivationKind.SIGMOID:
                return np.log(y) - np.log1p(-y)
            case ActivationKind.TANH:
                return np.arctanh(y)
            case ActivationKind.LEAKY_RELU:
                return np.where(y >= 0.0, y, y / self.alpha)
            case _:
                return y.copy()

    @property
    def value_at_zero(self) -> float:
        return float(self(0.0))


def sigmoid() -> Activation:
    return Activation(ActivationKind.SIGMOID)


def tanh() -> Activation:
    return Activation(ActivationKind.TANH)


def leaky_relu(alpha: float = 0.01) -> Activation:
    return Activation(ActivationKind.LEAKY_RELU, alpha)


def relu() -> Activation:
    return Activation(ActivationKind.RELU)


def identity() -> Activation:
    return Activation(ActivationKind.IDENTITY)
