"""Achievable normalized points and the space-sharing region they span."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .bounds import BoundId
from .core import DomainError, NormalizedPoint, ParamSet, PLCurve, lower_hull, normalize, parse_rat
from .curves import normalized_outer_curve
from .fr import mbr_point, msr_point


@dataclass(frozen=True)
class AchievablePoint:
    point: NormalizedPoint
    label: str  # "MSR", "MBR", "layered(r)" or "known_interior"
    source: str
    r: Optional[int] = None


def layered_points(n: int) -> list[AchievablePoint]:
    """Canonical layered codes on ``n`` nodes with ``k = d = n - 1``, one per ``r``."""
    if n < 4:
        raise DomainError(f"layered points need n >= 4 (n={n})")
    out = []
    for r in range(2, n):
        pt = NormalizedPoint(alpha_bar=Fraction(r, n * (r - 1)), beta_bar=Fraction(r, n * (n - 1)))
        out.append(AchievablePoint(pt, f"layered({r})", "canonical layered code", r))
    return out


@lru_cache(maxsize=1)
def _catalogue() -> tuple[dict, ...]:
    text = resources.files("erbounds.data").joinpath("interior_points.json").read_text("utf-8")
    return tuple(json.loads(text)["points"])


def known_interior_points(params: ParamSet) -> list[AchievablePoint]:
    out = []
    for row in _catalogue():
        if (row["n"], row["k"], row["d"]) == (params.n, params.k, params.d):
            pt = NormalizedPoint(parse_rat(row["alpha_bar"]), parse_rat(row["beta_bar"]))
            out.append(AchievablePoint(pt, "known_interior", row["source"]))
    return out


def achievable_points(params: ParamSet) -> list[AchievablePoint]:
    msr, mbr = msr_point(params, 1), mbr_point(params, 1)
    pts = [
        AchievablePoint(normalize(msr.point, msr.file_size), "MSR", "MSR codes"),
        AchievablePoint(normalize(mbr.point, mbr.file_size), "MBR", "MBR codes"),
    ]
    if params.k == params.d == params.n - 1 and params.n >= 4:
        pts.extend(layered_points(params.n))
    pts.extend(known_interior_points(params))
    return pts


def achievable_region(params: ParamSet) -> PLCurve:
    """Space-sharing envelope of every known achievable point for ``params``."""
    pts = achievable_points(params)
    if not pts:
        raise DomainError(f"no achievable points known for {params}")
    return lower_hull(p.point for p in pts)


def gap_report(params: ParamSet, bound_id: BoundId | str) -> list[tuple[Fraction, Fraction]]:
    """``alpha_bar`` gap between achievable and outer curves at every breakpoint.

    Both curves are piecewise linear, so the gap is extremal at the union of
    their vertex abscissae; only abscissae inside both curves' ranges count.
    """
    ach = achievable_region(params)
    outer = normalized_outer_curve(params, bound_id)
    lo = max(ach.beta_range[0], outer.beta_range[0])
    hi = min(ach.beta_range[1], outer.beta_range[1])
    xs = sorted({x for x, _ in ach.xy + outer.xy if lo <= x <= hi})
    return [(x, ach.alpha_at(x) - outer.alpha_at(x)) for x in xs]
