"""
End-to-end matrices of trained linear networks.
"""

import numpy as np

from memolab.errors import InvalidInputError
from memolab.net_engine import ConvSpec, FullyConnectedSpec, Network, UpsampleSpec
from memolab.nonlinear_fc import ActivationKind
from memolab.numkit import Matrix

from .operators import ConvFilterParams, create_filter_matrix, create_upsampling_matrix


def layer_operator(net: Network, k: int) -> Matrix:
    """Interior matrix of layer ``k`` (output size × input size)."""
    spec = net.spec.layers[k]
    if getattr(spec, "bias", False):
        raise InvalidInputError(f"layer {k} has a bias; the network is affine, not linear")
    activation = getattr(spec, "activation", None)
    if activation is not None and activation.name is not ActivationKind.IDENTITY:
        raise InvalidInputError(
            f"layer {k} uses {activation.name.value}; only linear networks linearize"
        )
    match spec:
        case ConvSpec():
            params = ConvFilterParams.from_kernels(net.params[k][0], spec.side, spec.stride)
            return create_filter_matrix(params).interior()
        case UpsampleSpec():
            return create_upsampling_matrix(spec.side, spec.channels, spec.scale).interior()
        case FullyConnectedSpec():
            return net.params[k][0].copy()
    raise InvalidInputError(f"cannot linearize layer {k} of kind {spec.kind}")


def linearize_network(net: Network) -> Matrix:
    """
    The d×d matrix M with f(x) = M x for a bias-free linear network.

    Skip blocks contribute (B + I) where B is the block's own product.
    """
    blocks = dict(net.spec.skip_blocks())
    total = np.eye(net.dim)
    k = 0
    while k < net.spec.depth:
        if k in blocks:
            stop = blocks[k]
            inner = layer_operator(net, k)
            for j in range(k + 1, stop):
                inner = layer_operator(net, j) @ inner
            total = (inner + np.eye(inner.shape[0])) @ total
            k = stop
        else:
            total = layer_operator(net, k) @ total
            k += 1
    return total
