"""
Single-layer linear fully connected autoencoders trained by gradient descent.
"""

from .gd import (
    LinearGdRun,
    default_learning_rate,
    gd_linear,
    gd_linear_closed_form,
    gd_linear_from,
    min_norm_projection,
    perturbation_bound,
    reconstruction_loss,
)
from .training_set import (
    TrainingSet,
    covariance,
    load_training_set,
    save_training_set,
)

__all__ = [
    "TrainingSet",
    "covariance",
    "save_training_set",
    "load_training_set",
    "LinearGdRun",
    "reconstruction_loss",
    "default_learning_rate",
    "gd_linear",
    "gd_linear_closed_form",
    "min_norm_projection",
    "gd_linear_from",
    "perturbation_bound",
]
