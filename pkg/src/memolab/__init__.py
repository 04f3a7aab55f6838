"""
memolab: a numerical laboratory for memorization in overparameterized autoencoders

Trains small linear and nonlinear autoencoders with from-scratch numerics,
linearizes convolutional stacks into explicit matrices, and analyses the
trained maps as discrete dynamical systems whose attractors are the
training examples.
"""

__version__ = "0.1.0"
__author__ = "Manuel Porto"
__email__ = "manuel@example.com"

from .cli.main import main

__all__ = ["main", "__version__"]
