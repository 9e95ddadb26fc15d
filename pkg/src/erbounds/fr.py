"""Functional-repair baseline: the cut-set bound and its extreme points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import OperatingPoint, ParamSet, PLCurve, RatLike, as_rat, check_point, normalize


@dataclass(frozen=True)
class FRPoint:
    point: OperatingPoint
    file_size: Fraction


def cut_set_terms(params: ParamSet, point: OperatingPoint) -> list[Fraction]:
    """``gamma_i = min(alpha, (d - i) beta)`` for ``i = 0 .. k-1``."""
    return [min(point.alpha, (params.d - i) * point.beta) for i in range(params.k)]


def cut_set_bound(params: ParamSet, point: OperatingPoint) -> Fraction:
    check_point(params, point)
    return sum(cut_set_terms(params, point), Fraction(0))


def msr_point(params: ParamSet, beta: RatLike) -> FRPoint:
    beta = as_rat(beta)
    alpha = params.msr_ratio * beta
    return FRPoint(OperatingPoint(alpha, beta), params.k * alpha)


def mbr_point(params: ParamSet, beta: RatLike) -> FRPoint:
    beta = as_rat(beta)
    size = (params.d * params.k - comb(params.k, 2)) * beta
    return FRPoint(OperatingPoint(params.d * beta, beta), size)


def fr_corner_points(params: ParamSet) -> list[FRPoint]:
    """The k slope-discontinuity points ``alpha = (d - mu)``, ``beta = 1``."""
    out = []
    for mu in range(params.k):
        pt = OperatingPoint(params.d - mu, 1)
        out.append(FRPoint(pt, cut_set_bound(params, pt)))
    return out


def fr_normalized_curve(params: ParamSet) -> PLCurve:
    pts = [normalize(c.point, c.file_size) for c in fr_corner_points(params)]
    return PLCurve(tuple(sorted(pts, key=lambda p: p.beta_bar)))
