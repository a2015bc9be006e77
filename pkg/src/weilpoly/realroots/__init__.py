"""Decide whether a real polynomial has only real (non-negative, positive) roots."""

from .hyperbolic import (
    CriticalPointProfile,
    DiamondInput,
    Mode,
    critical_point_profile,
    diamond_all_real,
    hyperbolic_nonneg_exact,
    sign_mult_all_real,
)
from .lowdeg import (
    FerrariData,
    ResolventData,
    deg2_real_nonneg,
    deg3_real_nonneg,
    deg4_real_nonneg,
    deg5_monic_real_nonneg,
    ferrari_roots,
    theta_cubic,
    theta_sorted,
)

__all__ = [
    "CriticalPointProfile",
    "DiamondInput",
    "FerrariData",
    "Mode",
    "ResolventData",
    "critical_point_profile",
    "deg2_real_nonneg",
    "deg3_real_nonneg",
    "deg4_real_nonneg",
    "deg5_monic_real_nonneg",
    "diamond_all_real",
    "ferrari_roots",
    "hyperbolic_nonneg_exact",
    "sign_mult_all_real",
    "theta_cubic",
    "theta_sorted",
]
