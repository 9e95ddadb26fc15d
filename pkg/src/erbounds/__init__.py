"""Exact-repair regenerating code bounds, normalized tradeoff curves and verifiers."""

from __future__ import annotations

__version__ = "0.1.0"

from .achievability import (
    AchievablePoint,
    achievable_points,
    achievable_region,
    gap_report,
    known_interior_points,
    layered_points,
)
from .bounds import (
    BoundId,
    BoundReport,
    TrapezoidShape,
    combined_bound,
    epsilon0,
    epsilon1,
    evaluate,
    improved_mt_bound,
    linear_bound_k_eq_d,
    mohajer_tandon_bound,
    rank_dual_bound,
    repair_matrix_bound,
    shah_exception_region,
    tian433_bound,
    trapezoid_bound,
)
from .core import (
    DomainError,
    NormalizedPoint,
    NotApplicableError,
    OperatingPoint,
    ParamSet,
    PLCurve,
    Rat,
    Regime,
    format_rat,
    lower_hull,
    normalize,
    parse_rat,
    regime_of,
)
from .curves import normalized_outer_curve
from .fr import cut_set_bound, fr_corner_points, fr_normalized_curve, mbr_point, msr_point

__all__ = [name for name in dir() if not name.startswith("_")]
