"""Exact normalized outer-bound curves.

With ``beta = 1`` every bound is a minimum of *component* functions of
``alpha`` that are affine on each open cell between structural points
(integers, ``d / r`` and the near-MSR case boundary).  Fitting each component
exactly per cell and taking the lower envelope gives the bound as an exact
piecewise-affine function, possibly with jumps at cell edges.  The map
``alpha -> (1 / B, alpha / B)`` sends affine pieces to segments, and the
outer region is the upward closure of their union.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from . import bounds as eb
from .bounds import BoundId
from .core import XY, NotApplicableError, OperatingPoint, ParamSet, PLCurve
from .fr import cut_set_bound

Components = Callable[[Fraction], list[Fraction]]


def _pt(alpha: Fraction) -> OperatingPoint:
    return OperatingPoint(alpha, 1)


def _cutset_components(params: ParamSet) -> Components:
    return lambda a: [cut_set_bound(params, _pt(a))]


def _trapezoid_components(params: ParamSet) -> Components:
    return lambda a: [eb.trapezoid_bound(params, _pt(a), q) for q in range(params.k + 1)]


def _mt_components(params: ParamSet) -> Components:
    def f(a: Fraction) -> list[Fraction]:
        pt = _pt(a)
        terms = [eb.mohajer_tandon_term(params, pt, p) for p in range(params.k + 1)]
        return terms + [cut_set_bound(params, pt)]

    return f


def _improved_components(params: ParamSet) -> Components:
    def f(a: Fraction) -> list[Fraction]:
        pt = _pt(a)
        terms = [
            eb.improved_mt_term(params, pt, p, s)
            for p in range(params.k + 1)
            for s in eb.improved_mt_splits(params, p)
        ]
        return terms + [cut_set_bound(params, pt)]

    return f


def _repair_components(params: ParamSet) -> Components:
    # B1 = bhat - max(0, eps0, eps1) = min(bhat, bhat - eps0, bhat - eps1)
    def f(a: Fraction) -> list[Fraction]:
        pt = _pt(a)
        bhat = cut_set_bound(params, pt)
        out = [bhat]
        regime = eb._safe_regime(params, pt)
        if regime is None:
            return out
        for raw in (eb._epsilon0_raw, eb._epsilon1_raw):
            try:
                out.append(bhat - raw(params, regime))
            except NotApplicableError:
                pass
        return out

    return f


def _linear_components(params: ParamSet) -> Components:
    def f(a: Fraction) -> list[Fraction]:
        pt = _pt(a)
        return [eb.linear_bound_k_eq_d(params, pt, integral=False).value, cut_set_bound(params, pt)]

    return f


def _rank_dual_components(params: ParamSet) -> Components:
    def f(a: Fraction) -> list[Fraction]:
        pt = _pt(a)
        out = [params.n * a - eb.fr_dual_rank_bound(params, pt), cut_set_bound(params, pt)]
        try:
            out.append(params.n * a - eb.general_rank_bound(params, pt, integral=False)[0])
        except NotApplicableError:
            pass
        return out

    return f


def _tian_components(params: ParamSet) -> Components:
    return lambda a: [eb.tian433_bound(_pt(a)), cut_set_bound(params, _pt(a))]


def _combined_components(params: ParamSet) -> Components:
    parts = [
        _repair_components(params),
        _improved_components(params),
        _trapezoid_components(params),
    ]
    return lambda a: [v for part in parts for v in part(a)]


def bound_components(params: ParamSet, bound_id: BoundId | str) -> Components:
    """Component functions whose pointwise minimum is the bound at ``beta = 1``.

    Raises NotApplicableError when the bound does not apply to ``params``.
    """
    bound_id = BoundId(bound_id)
    red = params.reduced()
    if bound_id is BoundId.CUTSET:
        return _cutset_components(red)
    if bound_id is BoundId.TRAPEZOID:
        return _trapezoid_components(red)
    if bound_id is BoundId.MOHAJER_TANDON:
        return _mt_components(red)
    if bound_id is BoundId.IMPROVED_MT:
        return _improved_components(red)
    if bound_id is BoundId.REPAIR_MATRIX:
        if red.k < 3:
            raise NotApplicableError("the repair-matrix bound needs k >= 3")
        return _repair_components(red)
    if bound_id is BoundId.COMBINED:
        return _combined_components(red)
    if bound_id is BoundId.TIAN433:
        if (red.n, red.k, red.d) != (4, 3, 3):
            raise NotApplicableError("tian433 needs (n,k,d) = (4,3,3)")
        return _tian_components(red)
    if bound_id is BoundId.LINEAR_K_EQ_D:
        eb._linear_params(red)
        return _linear_components(red)
    if bound_id is BoundId.RANK_DUAL:
        return _rank_dual_components(red)
    raise AssertionError(bound_id)


def structural_points(params: ParamSet) -> list[Fraction]:
    """Sorted alpha values (``beta = 1``) where components may change form."""
    red = params.reduced()
    lo, hi = Fraction(red.msr_ratio), Fraction(red.d)
    pts = {Fraction(i) for i in range(red.msr_ratio, red.d + 1)}
    pts.update(Fraction(red.d, r) for r in range(1, red.n + 1))
    if red.k >= 3:
        pts.update(eb.shah_exception_region(red))
    return sorted(p for p in pts if lo <= p <= hi)


# -- exact piecewise-affine evaluation ---------------------------------------------------

Line = tuple[Fraction, Fraction]  # value = slope * alpha + icpt


def _fit(v0: Fraction, v1: Fraction, x0: Fraction, x1: Fraction) -> Line:
    slope = (v1 - v0) / (x1 - x0)
    return slope, v0 - slope * x0


def _envelope(lines: list[Line], lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Vertices of ``min(lines)`` on the closed interval ``[lo, hi]``."""
    xs = {lo, hi}
    for i, (s1, c1) in enumerate(lines):
        for s2, c2 in lines[i + 1 :]:
            if s1 != s2:
                x = (c2 - c1) / (s1 - s2)
                if lo < x < hi:
                    xs.add(x)
    return [(x, min(s * x + c for s, c in lines)) for x in sorted(xs)]


def bound_pieces(params: ParamSet, bound_id: BoundId | str) -> list[list[tuple[Fraction, Fraction]]]:
    """The bound at ``beta = 1`` as continuous pieces of ``(alpha, B)`` vertices.

    Each cell contributes one piece built from one-sided limits; the actual
    value at every structural point is added as a single-vertex piece.
    """
    comps = bound_components(params, bound_id)
    xs = structural_points(params)
    pieces: list[list[tuple[Fraction, Fraction]]] = []
    for x in xs:
        pieces.append([(x, min(comps(x)))])
    for lo, hi in zip(xs, xs[1:]):
        w = hi - lo
        s0, s1 = lo + w / 3, lo + 2 * w / 3
        v0, v1 = comps(s0), comps(s1)
        if len(v0) != len(v1):
            raise AssertionError(f"component set changes inside cell ({lo}, {hi})")
        lines = [_fit(a, b, s0, s1) for a, b in zip(v0, v1)]
        pieces.append(_envelope(lines, lo, hi))
    return pieces


# -- normalized plane ------------------------------------------------------------------


def _closure_pieces(segments: list[tuple[XY, XY]]) -> list[tuple[Fraction, Fraction, Line, Optional[Fraction]]]:
    """Each segment's contribution to ``min{y : (x', y) on segment, x' <= x}``.

    Returned as ``(start_x, end_x, line, flat_y)``: the line applies on
    ``[start_x, end_x]`` and the constant ``flat_y`` from ``end_x`` on.
    """
    out = []
    for p, q in segments:
        (xa, ya), (xb, yb) = sorted((p, q))
        if xa == xb or yb >= ya:
            y = min(ya, yb)
            out.append((xa, xa, (Fraction(0), y), y))
        else:
            line = _fit(ya, yb, xa, xb)
            out.append((xa, xb, line, yb))
    return out


def _closure_value(parts, x: Fraction) -> Optional[Fraction]:
    best: Optional[Fraction] = None
    for xa, xb, (s, c), flat in parts:
        if x < xa:
            continue
        v = s * x + c if x <= xb else flat
        if best is None or v < best:
            best = v
    return best


def upward_closure_boundary(segments: list[tuple[XY, XY]]) -> PLCurve:
    """Lower-left boundary of the upward closure of a union of segments.

    A point dominated coordinatewise by a feasible normalized point is also
    outside the region any outer bound can exclude, so the exact boundary
    is ``y(x) = min{y' : (x', y') on some segment, x' <= x}``.
    """
    parts = _closure_pieces(segments)
    xs = set()
    lines: list[Line] = []
    for xa, xb, line, flat in parts:
        xs.update((xa, xb))
        lines.append(line)
        lines.append((Fraction(0), flat))
    x_lo, x_hi = min(xs), max(xs)
    for i, (s1, c1) in enumerate(lines):
        for s2, c2 in lines[i + 1 :]:
            if s1 != s2:
                x = (c2 - c1) / (s1 - s2)
                if x_lo < x < x_hi:
                    xs.add(x)
    pts = [(x, _closure_value(parts, x)) for x in sorted(xs)]
    return PLCurve.from_xy(pts)


def normalized_outer_curve(params: ParamSet, bound_id: BoundId | str) -> PLCurve:
    """Outer bound on the normalized tradeoff in the ``(beta_bar, alpha_bar)`` plane."""
    segments: list[tuple[XY, XY]] = []
    for piece in bound_pieces(params, bound_id):
        mapped = [(1 / b, a / b) for a, b in piece]
        if len(mapped) == 1:
            segments.append((mapped[0], mapped[0]))
        segments.extend(zip(mapped, mapped[1:]))
    return upward_closure_boundary(segments)
