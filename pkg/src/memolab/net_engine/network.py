"""
Autoencoder networks: parameters plus the layer stack described by a
``NetworkSpec``, with batched forward, reverse-mode gradients and Jacobians.
"""

import json
import logging
from pathlib import Path

import numpy as np
import numpy.typing as npt

from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.numkit import Matrix
from memolab.utils.file_utils import read_file, write_file

from .initializers import Params, initialize_parameters
from .layers import Layer, build_layer
from .specs import NetworkSpec

logger = logging.getLogger(__name__)

FORMAT_HEADER = "memolab-network 1"


class Network:
    """
    A map f: Rᵈ → Rᵈ made of layers and optional identity skip connections.

    ``params[k]`` holds the tensors of layer k (weight first, then bias).
    """

    def __init__(self, spec: NetworkSpec, params: Params | None = None):
        self.spec = spec
        self.layers: list[Layer] = [build_layer(ls) for ls in spec.layers]
        if params is None:
            params = initialize_parameters(
                self.layers, spec.initializer, spec.seed
            )
        self._check_params(params)
        self.params = params
        self._block_end = {stop - 1: start for start, stop in spec.skip_blocks()}

    def _check_params(self, params: Params) -> None:
        if len(params) != len(self.layers):
            raise InvalidInputError(
                f"expected parameters for {len(self.layers)} layers, got {len(params)}"
            )
        for k, (layer, tensors) in enumerate(zip(self.layers, params, strict=True)):
            shapes = [tuple(t.shape) for t in tensors]
            if shapes != layer.param_shapes():
                raise InvalidInputError(
                    f"layer {k}: parameter shapes {shapes} != {layer.param_shapes()}"
                )

    @property
    def dim(self) -> int:
        return self.spec.input_dim

    def copy(self) -> "Network":
        return Network(self.spec, [[t.copy() for t in ts] for ts in self.params])

    def with_params(self, params: Params) -> "Network":
        return Network(self.spec, params)

    def _as_batch(self, x: npt.ArrayLike) -> tuple[np.ndarray, bool]:
        batch = np.asarray(x, dtype=np.float64)
        single = batch.ndim == 1
        batch = np.atleast_2d(batch)
        if batch.ndim != 2 or batch.shape[1] != self.dim:
            raise InvalidInputError(
                f"network expects vectors of length {self.dim}, got shape {batch.shape}"
            )
        return batch, single

    def forward_with_cache(self, batch: np.ndarray) -> tuple[np.ndarray, list]:
        caches = []
        block_inputs: dict[int, np.ndarray] = {}
        starts = set(self._block_end.values())
        h = batch
        for k, layer in enumerate(self.layers):
            if k in starts:
                block_inputs[k] = h
            h, cache = layer.forward(self.params[k], h)
            caches.append(cache)
            if k in self._block_end:
                h = h + block_inputs[self._block_end[k]]
        return h, caches

    def backward(
        self, grad_out: np.ndarray, caches: list
    ) -> tuple[np.ndarray, Params]:
        """
        Push ``grad_out`` (n, d) back through the cached forward pass.

        Returns:
            Gradient with respect to the input batch and per-layer parameter
            gradients in the layout of ``params``
        """
        grads: Params = [[] for _ in self.layers]
        skip_grads: dict[int, np.ndarray] = {}
        g = grad_out
        for k in range(len(self.layers) - 1, -1, -1):
            if k in self._block_end:
                skip_grads[self._block_end[k]] = g
            g, grads[k] = self.layers[k].backward(self.params[k], g, caches[k])
            if k in skip_grads:
                g = g + skip_grads.pop(k)
        return g, grads

    def forward(self, x: npt.ArrayLike) -> np.ndarray:
        """Evaluate f on one vector (d,) or a batch (n, d)."""
        batch, single = self._as_batch(x)
        out, _ = self.forward_with_cache(batch)
        return out[0] if single else out

    __call__ = forward

    def loss(self, ts: TrainingSet) -> float:
        """Σᵢ ‖f(x⁽ⁱ⁾) − x⁽ⁱ⁾‖², not averaged."""
        residual = self.forward(ts.examples) - ts.examples
        return float(np.sum(residual * residual))

    def loss_and_grad(self, ts: TrainingSet) -> tuple[float, Params]:
        out, caches = self.forward_with_cache(self._as_batch(ts.examples)[0])
        residual = out - ts.examples
        _, grads = self.backward(2.0 * residual, caches)
        return float(np.sum(residual * residual)), grads

    def jacobian(self, x: npt.ArrayLike) -> Matrix:
        """d×d Jacobian of f at x; row m is ∇f_m(x)."""
        batch, _ = self._as_batch(x)
        if batch.shape[0] != 1:
            raise InvalidInputError("jacobian takes a single point")
        seeds = np.eye(self.dim)
        _, caches = self.forward_with_cache(np.repeat(batch, self.dim, axis=0))
        jac, _ = self.backward(seeds, caches)
        return jac

    def output_norm(self, x: npt.ArrayLike) -> float:
        return float(np.linalg.norm(self.forward(x)))

    def parameter_count(self) -> int:
        return sum(t.size for ts in self.params for t in ts)


def save_network(net: Network, path: str | Path) -> None:
    """
    Write a network as text: a version header, the spec as one JSON line,
    the parameter count, then one value per line with 17 significant digits.
    """
    flat = [v for ts in net.params for t in ts for v in t.ravel()]
    lines = [FORMAT_HEADER, net.spec.model_dump_json(), str(len(flat))]
    lines.extend(f"{v:.17g}" for v in flat)
    write_file(str(path), "\n".join(lines) + "\n")


def load_network(path: str | Path) -> Network:
    """
    Read a network written by ``save_network``.

    Raises:
        InvalidInputError: On a version mismatch or malformed body
    """
    lines = read_file(str(path)).splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise InvalidInputError(f"{path}: not a {FORMAT_HEADER!r} file")
    try:
        spec = NetworkSpec.model_validate(json.loads(lines[1]))
        count = int(lines[2])
        values = np.array([float(v) for v in lines[3 : 3 + count]])
    except (IndexError, ValueError) as e:
        raise InvalidInputError(f"{path}: malformed network file: {e}") from e
    if values.size != count:
        raise InvalidInputError(f"{path}: expected {count} values, got {values.size}")

    layers = [build_layer(ls) for ls in spec.layers]
    params: Params = []
    offset = 0
    for layer in layers:
        tensors = []
        for shape in layer.param_shapes():
            size = int(np.prod(shape))
            tensors.append(values[offset : offset + size].reshape(shape))
            offset += size
        params.append(tensors)
    if offset != count:
        raise InvalidInputError(f"{path}: {count} values for {offset} parameters")
    logger.debug("loaded network with %d parameters from %s", count, path)
    return Network(spec, params)
