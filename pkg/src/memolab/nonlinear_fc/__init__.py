"""
Single nonlinear layer autoencoders x ↦ φ(A x): activations, the memorization
assumption, adaptive and constant-rate training, and post-training probes.
"""

from .activation import (
    Activation,
    ActivationKind,
    identity,
    leaky_relu,
    relu,
    sigmoid,
    tanh,
)
from .assumption import (
    AssumptionPipeline,
    AssumptionReport,
    ClauseCheck,
    ClauseResult,
    CurvatureCheck,
    OneSidedCoordinateCheck,
    OpenUnitCubeCheck,
    check_assumption1,
)
from .probes import PhiEigenReport, SpanMembership, phi_eigencheck, phi_span_membership
from .training import (
    AdaptiveGdConfig,
    NonlinearGdResult,
    adaptive_gd,
    constant_lr_gd,
    default_constant_rate,
    linear_surrogate_gd,
    ratio_bound,
    reconstruction_residual,
    slope_table,
)

__all__ = [
    "Activation",
    "ActivationKind",
    "sigmoid",
    "tanh",
    "leaky_relu",
    "relu",
    "identity",
    "ClauseCheck",
    "ClauseResult",
    "AssumptionReport",
    "AssumptionPipeline",
    "OpenUnitCubeCheck",
    "OneSidedCoordinateCheck",
    "CurvatureCheck",
    "check_assumption1",
    "AdaptiveGdConfig",
    "NonlinearGdResult",
    "ratio_bound",
    "slope_table",
    "reconstruction_residual",
    "adaptive_gd",
    "constant_lr_gd",
    "default_constant_rate",
    "linear_surrogate_gd",
    "PhiEigenReport",
    "SpanMembership",
    "phi_eigencheck",
    "phi_span_membership",
]
