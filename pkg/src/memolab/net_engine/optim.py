"""
Optimizers. ``step`` returns fresh parameter arrays, leaving the previous
ones untouched so callers can keep the last finite iterate.
"""

from abc import ABC, abstractmethod

import numpy as np

from .initializers import Params
from .specs import AdamSpec, GradientDescentSpec, OptimizerSpec


class Optimizer(ABC):
    @abstractmethod
    def step(self, params: Params, grads: Params) -> Params:
        pass


class GradientDescent(Optimizer):
    def __init__(self, lr: float):
        self.lr = lr

    def step(self, params: Params, grads: Params) -> Params:
        return [
            [p - self.lr * g for p, g in zip(ps, gs, strict=True)]
            for ps, gs in zip(params, grads, strict=True)
        ]


class Adam(Optimizer):
    def __init__(self, lr: float, beta1: float, beta2: float, eps: float):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m: Params | None = None
        self.v: Params | None = None

    def step(self, params: Params, grads: Params) -> Params:
        if self.m is None or self.v is None:
            self.m = [[np.zeros_like(p) for p in ps] for ps in params]
            self.v = [[np.zeros_like(p) for p in ps] for ps in params]
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        updated: Params = []
        for k, (ps, gs) in enumerate(zip(params, grads, strict=True)):
            layer = []
            for j, (p, g) in enumerate(zip(ps, gs, strict=True)):
                self.m[k][j] = self.beta1 * self.m[k][j] + (1.0 - self.beta1) * g
                self.v[k][j] = self.beta2 * self.v[k][j] + (1.0 - self.beta2) * g * g
                m_hat = self.m[k][j] / c1
                v_hat = self.v[k][j] / c2
                layer.append(p - self.lr * m_hat / (np.sqrt(v_hat) + self.eps))
            updated.append(layer)
        return updated


def build_optimizer(spec: OptimizerSpec) -> Optimizer:
    match spec:
        case GradientDescentSpec():
            return GradientDescent(spec.lr)
        case AdamSpec():
            return Adam(spec.lr, spec.beta1, spec.beta2, spec.eps)
    raise TypeError(f"unsupported optimizer spec {type(spec).__name__}")
