"""
Runtime layers with hand-written forward and reverse-mode passes.

Every layer maps a batch of flat vectors (n, input_size) to (n, output_size).
Image tensors are laid out channel-major, row-major within a channel, which
matches the ordering of the interior pixels in ``conv_linear``.
"""

from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from memolab.nonlinear_fc import Activation, ActivationKind

from .specs import ActivationSpec, ConvSpec, FullyConnectedSpec, LayerSpec, UpsampleSpec

Array = np.ndarray
Cache = Any


def _maybe(spec: ActivationSpec) -> Activation | None:
    return None if spec.name is ActivationKind.IDENTITY else spec.build()


class Layer(ABC):
    """A differentiable map with parameters ``[weight]`` or ``[weight, bias]``."""

    activation: Activation | None = None

    @abstractmethod
    def param_shapes(self) -> list[tuple[int, ...]]:
        pass

    @abstractmethod
    def fans(self) -> tuple[int, int]:
        """Return (fan_in, fan_out) of the weight tensor."""
        pass

    @abstractmethod
    def linear_forward(self, params: list[Array], h: Array) -> tuple[Array, Cache]:
        pass

    @abstractmethod
    def linear_backward(
        self, params: list[Array], grad: Array, cache: Cache
    ) -> tuple[Array, list[Array]]:
        pass

    def forward(self, params: list[Array], h: Array) -> tuple[Array, Cache]:
        pre, cache = self.linear_forward(params, h)
        if self.activation is None:
            return pre, (cache, None)
        return self.activation(pre), (cache, pre)

    def backward(
        self, params: list[Array], grad: Array, cache: Cache
    ) -> tuple[Array, list[Array]]:
        inner, pre = cache
        if pre is not None:
            grad = grad * self.activation.derivative(pre)
        return self.linear_backward(params, grad, inner)


class DenseLayer(Layer):
    def __init__(self, spec: FullyConnectedSpec):
        self.spec = spec
        self.activation = _maybe(spec.activation)

    def param_shapes(self) -> list[tuple[int, ...]]:
        shapes: list[tuple[int, ...]] = [(self.spec.out_features, self.spec.in_features)]
        if self.spec.bias:
            shapes.append((self.spec.out_features,))
        return shapes

    def fans(self) -> tuple[int, int]:
        return self.spec.in_features, self.spec.out_features

    def linear_forward(self, params: list[Array], h: Array) -> tuple[Array, Cache]:
        out = h @ params[0].T
        if self.spec.bias:
            out = out + params[1]
        return out, h

    def linear_backward(
        self, params: list[Array], grad: Array, cache: Cache
    ) -> tuple[Array, list[Array]]:
        h = cache
        grads = [grad.T @ h]
        if self.spec.bias:
            grads.append(grad.sum(axis=0))
        return grad @ params[0], grads


class ConvLayer(Layer):
    """3×3 cross-correlation with zero padding 1 and stride 1 or 2."""

    def __init__(self, spec: ConvSpec):
        self.spec = spec
        self.activation = _maybe(spec.activation)

    def param_shapes(self) -> list[tuple[int, ...]]:
        shapes: list[tuple[int, ...]] = [
            (self.spec.out_channels, self.spec.in_channels, 3, 3)
        ]
        if self.spec.bias:
            shapes.append((self.spec.out_channels,))
        return shapes

    def fans(self) -> tuple[int, int]:
        return 9 * self.spec.in_channels, 9 * self.spec.out_channels

    def _windows(self):
        stride, span = self.spec.stride, self.spec.stride * self.spec.out_side
        for a in range(3):
            for b in range(3):
                yield a, b, (slice(a, a + span, stride), slice(b, b + span, stride))

    def linear_forward(self, params: list[Array], h: Array) -> tuple[Array, Cache]:
        s, c = self.spec.side, self.spec.in_channels
        n = h.shape[0]
        padded = np.zeros((n, c, s + 2, s + 2))
        padded[:, :, 1:-1, 1:-1] = h.reshape(n, c, s, s)
        w = params[0]
        so = self.spec.out_side
        out = np.zeros((n, self.spec.out_channels, so, so))
        for a, b, (rows, cols) in self._windows():
            out += np.einsum("oc,ncij->noij", w[:, :, a, b], padded[:, :, rows, cols])
        if self.spec.bias:
            out += params[1][None, :, None, None]
        return out.reshape(n, -1), padded

    def linear_backward(
        self, params: list[Array], grad: Array, cache: Cache
    ) -> tuple[Array, list[Array]]:
        padded = cache
        n = grad.shape[0]
        so = self.spec.out_side
        g = grad.reshape(n, self.spec.out_channels, so, so)
        w = params[0]
        dw = np.zeros_like(w)
        dpadded = np.zeros_like(padded)
        for a, b, (rows, cols) in self._windows():
            dw[:, :, a, b] = np.einsum("noij,ncij->oc", g, padded[:, :, rows, cols])
            dpadded[:, :, rows, cols] += np.einsum("oc,noij->ncij", w[:, :, a, b], g)
        grads = [dw]
        if self.spec.bias:
            grads.append(g.sum(axis=(0, 2, 3)))
        return dpadded[:, :, 1:-1, 1:-1].reshape(n, -1), grads


class UpsampleLayer(Layer):
    """Nearest-neighbour upsampling; parameter free."""

    def __init__(self, spec: UpsampleSpec):
        self.spec = spec
        self.activation = None

    def param_shapes(self) -> list[tuple[int, ...]]:
        return []

    def fans(self) -> tuple[int, int]:
        return 0, 0

    def linear_forward(self, params: list[Array], h: Array) -> tuple[Array, Cache]:
        n, c, s, k = h.shape[0], self.spec.channels, self.spec.side, self.spec.scale
        x = h.reshape(n, c, s, s)
        return x.repeat(k, axis=2).repeat(k, axis=3).reshape(n, -1), None

    def linear_backward(
        self, params: list[Array], grad: Array, cache: Cache
    ) -> tuple[Array, list[Array]]:
        n, c, s, k = grad.shape[0], self.spec.channels, self.spec.side, self.spec.scale
        g = grad.reshape(n, c, s, k, s, k).sum(axis=(3, 5))
        return g.reshape(n, -1), []


def build_layer(spec: LayerSpec) -> Layer:
    match spec:
        case FullyConnectedSpec():
            return DenseLayer(spec)
        case ConvSpec():
            return ConvLayer(spec)
        case UpsampleSpec():
            return UpsampleLayer(spec)
    raise TypeError(f"unsupported layer spec {type(spec).__name__}")
