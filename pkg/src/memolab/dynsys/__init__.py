"""
Trained autoencoders as discrete dynamical systems: orbits, fixed-point
stability and recovery of training examples.
"""

from .fixed_points import (
    FixedPointReport,
    Stability,
    SuperattractorReport,
    attractor_census,
    classify_fixed_point,
    superattractor_check,
)
from .recovery import recovery_curve, recovery_probability
from .trajectories import (
    TRAJECTORY_COLUMNS,
    Trajectory,
    default_recovery_eps,
    iterate,
    iterate_many,
    trajectories_frame,
    training_scale,
)

__all__ = [
    "Trajectory",
    "TRAJECTORY_COLUMNS",
    "iterate",
    "iterate_many",
    "trajectories_frame",
    "default_recovery_eps",
    "training_scale",
    "Stability",
    "FixedPointReport",
    "classify_fixed_point",
    "attractor_census",
    "SuperattractorReport",
    "superattractor_check",
    "recovery_probability",
    "recovery_curve",
]
