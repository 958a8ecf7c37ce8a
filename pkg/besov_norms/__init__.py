from .schema import BesovSpec, CheminLernerSpec, RatioStatistics, Trajectory
from .service import (
    besov_blocks,
    besov_norm,
    chemin_lerner_norm,
    lp_norm,
    time_mixed_norm,
    time_mixed_norm_curve,
)

__all__ = [
    "BesovSpec",
    "CheminLernerSpec",
    "RatioStatistics",
    "Trajectory",
    "besov_blocks",
    "besov_norm",
    "chemin_lerner_norm",
    "lp_norm",
    "time_mixed_norm",
    "time_mixed_norm_curve",
]
