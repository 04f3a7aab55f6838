"""
Parameter initializers.

Fan-based schemes draw weights and zero the biases; ``constant`` and
``framework_default`` also fill biases.
"""

import numpy as np

from .layers import Layer
from .specs import InitializerSpec

Params = list[list[np.ndarray]]


def _weight(
    spec: InitializerSpec, shape: tuple[int, ...], fans: tuple[int, int], rng
) -> np.ndarray:
    fan_in, fan_out = fans
    match spec.name:
        case "zeros":
            return np.zeros(shape)
        case "constant":
            return np.full(shape, spec.value)
        case "xavier_uniform":
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            return rng.uniform(-bound, bound, size=shape)
        case "xavier_normal":
            return rng.normal(0.0, np.sqrt(2.0 / (fan_in + fan_out)), size=shape)
        case "kaiming_uniform":
            bound = np.sqrt(6.0 / fan_in)
            return rng.uniform(-bound, bound, size=shape)
        case "kaiming_normal":
            return rng.normal(0.0, np.sqrt(2.0 / fan_in), size=shape)
        case "framework_default":
            bound = 1.0 / np.sqrt(fan_in)
            return rng.uniform(-bound, bound, size=shape)
        case "normal":
            return rng.normal(0.0, spec.std, size=shape)
    raise ValueError(f"unknown initializer {spec.name!r}")


def _bias(spec: InitializerSpec, shape: tuple[int, ...], fan_in: int, rng) -> np.ndarray:
    match spec.name:
        case "constant":
            return np.full(shape, spec.value)
        case "framework_default":
            bound = 1.0 / np.sqrt(fan_in)
            return rng.uniform(-bound, bound, size=shape)
    return np.zeros(shape)


def initialize_parameters(layers: list[Layer], spec: InitializerSpec, seed: int) -> Params:
    """Draw every layer's parameters from one generator seeded with ``seed``."""
    rng = np.random.default_rng(seed)
    params: Params = []
    for layer in layers:
        shapes = layer.param_shapes()
        fans = layer.fans()
        tensors = []
        if shapes:
            tensors.append(_weight(spec, shapes[0], fans, rng))
        if len(shapes) > 1:
            tensors.append(_bias(spec, shapes[1], fans[0], rng))
        params.append(tensors)
    return params
