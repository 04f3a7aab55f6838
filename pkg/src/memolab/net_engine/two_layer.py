"""
Two-layer ReLU autoencoder with a random, frozen first layer.

Only the output layer is fit, in closed form as the minimum-norm solution
of W₂ hᵢ = xᵢ. For one example the Jacobian at the example has rank one
and its eigenvalue approaches ‖x‖² / (‖x‖² + 1) as the width grows.
"""

from dataclasses import dataclass

import numpy as np

from memolab.errors import InvalidInputError, NumericalError
from memolab.linear_fc import TrainingSet
from memolab.nonlinear_fc import ActivationKind
from memolab.numkit import Matrix, Vector, pinv, spectral_radius

from .network import Network
from .specs import ActivationSpec, FullyConnectedSpec, InitializerSpec, NetworkSpec


@dataclass(frozen=True)
class TwoLayerReport:
    """
    ``top_eigenvalues[i]`` is the spectral radius of the Jacobian at x⁽ⁱ⁾;
    ``limit_predictions[i]`` is ‖x⁽ⁱ⁾‖² / (‖x⁽ⁱ⁾‖² + 1). ``hidden_overlap`` is
    the largest off-diagonal entry of the normalised Gram matrix of the
    hidden codes.
    """

    network: Network
    width: int
    top_eigenvalues: Vector
    limit_predictions: Vector
    hidden_gram: Matrix
    hidden_overlap: float


def two_layer_fixed_hidden(ts: TrainingSet, width: int, seed: int = 0) -> TwoLayerReport:
    """
    Build f(x) = W₂ relu(W₁ x + b) with W₁, b ~ N(0, 1) frozen and W₂ fit.

    Raises:
        InvalidInputError: If ``width`` is not positive
        NumericalError: If an example has an all-zero hidden code
    """
    if width < 1:
        raise InvalidInputError(f"width must be positive, got {width}")
    rng = np.random.default_rng(seed)
    w1 = rng.standard_normal((width, ts.d))
    b = rng.standard_normal(width)
    hidden = np.maximum(ts.examples @ w1.T + b, 0.0)
    norms = np.linalg.norm(hidden, axis=1)
    if np.any(norms == 0.0):
        raise NumericalError(
            "an example activates no hidden unit; increase the width",
            diagnostics={"width": width, "seed": seed},
        )
    w2 = ts.examples.T @ pinv(hidden.T)

    spec = NetworkSpec(
        layers=[
            FullyConnectedSpec(
                in_features=ts.d,
                out_features=width,
                activation=ActivationSpec(name=ActivationKind.RELU),
                bias=True,
            ),
            FullyConnectedSpec(in_features=width, out_features=ts.d),
        ],
        initializer=InitializerSpec(name="zeros"),
        seed=seed,
    )
    net = Network(spec, [[w1, b], [w2]])

    top = np.array(
        [spectral_radius(net.jacobian(x), seed=seed) for x in ts.examples]
    )
    sq = np.sum(ts.examples * ts.examples, axis=1)
    gram = (hidden @ hidden.T) / np.outer(norms, norms)
    overlap = float(np.max(np.abs(gram - np.eye(ts.n)))) if ts.n > 1 else 0.0
    return TwoLayerReport(
        network=net,
        width=width,
        top_eigenvalues=top,
        limit_predictions=sq / (sq + 1.0),
        hidden_gram=gram,
        hidden_overlap=overlap,
    )
