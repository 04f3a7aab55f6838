"""
Reverse-mode training engine for fully connected and convolutional autoencoders.
"""

from .initializers import initialize_parameters
from .layers import ConvLayer, DenseLayer, Layer, UpsampleLayer, build_layer
from .network import Network, load_network, save_network
from .optim import Adam, GradientDescent, Optimizer, build_optimizer
from .specs import (
    ActivationSpec,
    AdamSpec,
    ConvSpec,
    FullyConnectedSpec,
    GradientDescentSpec,
    InitializerSpec,
    LayerSpec,
    NetworkSpec,
    OptimizerSpec,
    UpsampleSpec,
    conv_stack,
    fully_connected_stack,
)
from .train import StopReason, TrainReport, gradcheck, train
from .two_layer import TwoLayerReport, two_layer_fixed_hidden

__all__ = [
    "ActivationSpec",
    "FullyConnectedSpec",
    "ConvSpec",
    "UpsampleSpec",
    "LayerSpec",
    "InitializerSpec",
    "NetworkSpec",
    "GradientDescentSpec",
    "AdamSpec",
    "OptimizerSpec",
    "fully_connected_stack",
    "conv_stack",
    "Layer",
    "DenseLayer",
    "ConvLayer",
    "UpsampleLayer",
    "build_layer",
    "initialize_parameters",
    "Network",
    "save_network",
    "load_network",
    "Optimizer",
    "GradientDescent",
    "Adam",
    "build_optimizer",
    "StopReason",
    "TrainReport",
    "train",
    "gradcheck",
    "TwoLayerReport",
    "two_layer_fixed_hidden",
]
