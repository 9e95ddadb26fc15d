"""Exact-repair file-size upper bounds.

Each bound maps an operating point ``(alpha, beta)`` of an ``(n, k, d)`` code
to an upper bound on the file size ``B`` of any exact-repair code there.  The
``evaluate`` dispatcher wraps them in :class:`BoundReport` records, which are
always capped by the cut-set value (an ER code is in particular an FR code).

Bounds are stated for ``n = d + 1``; larger ``n`` is handled by restricting
to ``d + 1`` nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Optional

from .core import (
    DomainError,
    NotApplicableError,
    OperatingPoint,
    ParamSet,
    Regime,
    check_point,
    positive_part,
    regime_of,
)
from .fr import cut_set_bound


class BoundId(str, Enum):
    CUTSET = "cutset"
    TRAPEZOID = "trapezoid"
    REPAIR_MATRIX = "repair_matrix"
    MOHAJER_TANDON = "mohajer_tandon"
    IMPROVED_MT = "improved_mt"
    COMBINED = "combined"
    TIAN433 = "tian433"
    LINEAR_K_EQ_D = "linear_k_eq_d"
    RANK_DUAL = "rank_dual"


@dataclass(frozen=True)
class BoundReport:
    bound_id: BoundId
    value: Fraction
    regime: Optional[Regime]
    applicable: bool
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class TrapezoidShape:
    """Cell counts of the trapezoid ``Z_q`` (rectangle plus triangle)."""

    q: int
    t: int
    cell_count_rect: int
    cell_count_tri: int


def _safe_regime(params: ParamSet, point: OperatingPoint) -> Optional[Regime]:
    try:
        return regime_of(params, point)
    except DomainError:
        return None


# -- trapezoids ---------------------------------------------------------------------


def trapezoid_shape(params: ParamSet, q: int, t: int = 0) -> TrapezoidShape:
    k, d = params.k, params.d
    if not 0 <= q <= k:
        raise DomainError(f"0 <= q <= k violated (q={q}, k={k})")
    if not 0 <= t <= k - q:
        raise DomainError(f"0 <= t <= k-q violated (t={t})")
    return TrapezoidShape(q=q, t=t, cell_count_rect=(d + 1 - k) * (k - q), cell_count_tri=comb(k - q, 2))


def trapezoid_bound(params: ParamSet, point: OperatingPoint, q: int) -> Fraction:
    """``B_q = q alpha + C(k-q, 2) beta + (d+1-k)(k-q) beta``."""
    shape = trapezoid_shape(params, q)
    return q * point.alpha + (shape.cell_count_tri + shape.cell_count_rect) * point.beta


def min_trapezoid_bound(params: ParamSet, point: OperatingPoint) -> BoundReport:
    check_point(params, point)
    values = [trapezoid_bound(params, point, q) for q in range(params.k + 1)]
    best = min(values)
    q = values.index(best)
    return BoundReport(BoundId.TRAPEZOID, best, _safe_regime(params, point), True, {"q": q})


def shah_exception_region(params: ParamSet) -> tuple[Fraction, Fraction]:
    """alpha/beta interval near MSR where FR-optimal ER codes are not ruled out."""
    if params.k < 3:
        raise NotApplicableError("the non-existence result needs k >= 3")
    m = params.msr_ratio
    return Fraction(m), Fraction(m + 1) - Fraction(m, m + 1)


# -- repair-matrix bound --------------------------------------------------------------


def _near_msr_theta_limit(params: ParamSet, beta: Fraction) -> Fraction:
    m = params.msr_ratio
    return Fraction(m, m + 1) * beta


def _epsilon0_raw(params: ParamSet, regime: Regime) -> Fraction:
    k, d = params.k, params.d
    mu, theta, beta = regime.mu, regime.theta, regime.beta
    if not 1 <= mu <= k - 2:
        raise NotApplicableError(f"epsilon0 needs 1 <= mu <= k-2 (mu={mu})")
    if mu == k - 2 and not theta < _near_msr_theta_limit(params, beta):
        raise NotApplicableError("epsilon0 at mu = k-2 needs theta < (d-k+1)/(d-k+2) beta")
    if k - mu < mu + 1:
        m = params.msr_ratio
        return (m * (k - mu - 1) * (beta - theta) - theta) / (m * (k - mu) + 1)
    r0 = (k - mu) // (mu + 1)
    D = d - Fraction((mu + 1) * (r0 + 3), 2) + 2
    return (D * r0 * mu * (beta - theta) - theta) / (D * r0 * (mu + 1) + 1)


def _epsilon1_raw(params: ParamSet, regime: Regime) -> Fraction:
    k, d = params.k, params.d
    mu, theta, beta = regime.mu, regime.theta, regime.beta
    if not 0 <= mu <= k - 3:
        raise NotApplicableError(f"epsilon1 needs 0 <= mu <= k-3 (mu={mu})")
    if mu == 0 and theta == 0:
        raise NotApplicableError("epsilon1 at mu = 0 needs theta != 0")
    if k - mu - 1 < mu + 2:
        m = params.msr_ratio
        return m * ((k - mu - 3) * beta + theta) / (m * (k - mu - 1) + 1)
    r1 = (k - mu - 1) // (mu + 2)
    D = d - Fraction((mu + 2) * (r1 + 3), 2) + 2
    return D * r1 * (mu * beta + theta) / (D * r1 * (mu + 2) + 1)


def epsilon0(params: ParamSet, regime: Regime) -> Fraction:
    """Lower bound on the ER/FR file-size gap from the ``q = mu`` trapezoid.

    Negative values near the regime edge are clamped to zero.
    """
    return positive_part(_epsilon0_raw(params.reduced(), regime))


def epsilon1(params: ParamSet, regime: Regime) -> Fraction:
    """Lower bound on the ER/FR file-size gap from the ``q = mu + 1`` trapezoid."""
    return positive_part(_epsilon1_raw(params.reduced(), regime))


def repair_matrix_delta(params: ParamSet, regime: Regime) -> tuple[Optional[Fraction], dict[str, Any]]:
    """The gap ``delta`` selected by regime, or None when no case applies."""
    detail: dict[str, Any] = {}
    for name, fn in (("epsilon0", epsilon0), ("epsilon1", epsilon1)):
        try:
            detail[name] = fn(params, regime)
        except NotApplicableError:
            pass
    if not detail:
        return None, detail
    return max(detail.values()), detail


def repair_matrix_bound(params: ParamSet, point: OperatingPoint) -> BoundReport:
    red = params.reduced()
    bhat = cut_set_bound(red, point)
    regime = _safe_regime(red, point)
    detail: dict[str, Any] = {"cutset": bhat}
    if regime is None:
        return BoundReport(BoundId.REPAIR_MATRIX, bhat, None, False, detail)
    delta, eps = repair_matrix_delta(red, regime)
    detail.update(eps)
    if delta is None:
        return BoundReport(BoundId.REPAIR_MATRIX, bhat, regime, False, detail)
    detail["delta"] = delta
    return BoundReport(BoundId.REPAIR_MATRIX, bhat - delta, regime, True, detail)


# -- Mohajer-Tandon family ------------------------------------------------------------


def mohajer_tandon_term(params: ParamSet, point: OperatingPoint, p: int) -> Fraction:
    k, d = params.k, params.d
    a, b = point.alpha, point.beta
    return (
        (3 * k - 2 * p) * a
        + Fraction(p * (2 * (d - k) + p + 1), 2) * b
        + (d - k + 1) * min(a, p * b)
    ) / 3


def improved_mt_term(params: ParamSet, point: OperatingPoint, p: int, a_split: int) -> Fraction:
    """One term of the improved bound for the split ``d-k+1 = a(p-1) + b``."""
    k, d = params.k, params.d
    alpha, beta = point.alpha, point.beta
    b_rem = (d - k + 1) - a_split * (p - 1)
    if a_split < 0 or b_rem < 0 or (a_split > 0 and p < 2):
        raise DomainError(f"invalid split a={a_split} for p={p}")
    A = a_split
    return (
        alpha * (2 * (k - p) * (1 + A) + k * (1 + 2 * A))
        + b_rem * min(alpha, p * beta)
        + Fraction((1 + 2 * A) * p * (2 * (d - k) + p + 1), 2) * beta
    ) / (3 + 4 * A)


def improved_mt_splits(params: ParamSet, p: int) -> range:
    """Admissible rectangle counts ``a`` for a given ``p``.

    ``a = 0`` reproduces the Mohajer-Tandon term; the largest ``a`` is the
    Euclidean split with ``0 <= b < p - 1``.  Every ``a`` in between is an
    equally valid split, and the term is monotone in ``a``.
    """
    if p < 2:
        return range(0, 1)
    return range(0, (params.d - params.k + 1) // (p - 1) + 1)


def mohajer_tandon_bound(params: ParamSet, point: OperatingPoint) -> BoundReport:
    red = params.reduced()
    bhat = cut_set_bound(red, point)
    terms = [mohajer_tandon_term(red, point, p) for p in range(red.k + 1)]
    raw = min(terms)
    detail = {"p": terms.index(raw), "raw": raw, "cutset": bhat}
    return BoundReport(BoundId.MOHAJER_TANDON, min(raw, bhat), _safe_regime(red, point), True, detail)


def improved_mt_bound(params: ParamSet, point: OperatingPoint) -> BoundReport:
    red = params.reduced()
    bhat = cut_set_bound(red, point)
    best: Optional[tuple[Fraction, int, int]] = None
    for p in range(red.k + 1):
        for A in improved_mt_splits(red, p):
            v = improved_mt_term(red, point, p, A)
            if best is None or v < best[0]:
                best = (v, p, A)
    assert best is not None
    raw, p, A = best
    b_rem = (red.d - red.k + 1) - A * (p - 1) if p >= 2 else red.d - red.k + 1
    detail = {"p": p, "a": A, "b": b_rem, "raw": raw, "cutset": bhat}
    return BoundReport(BoundId.IMPROVED_MT, min(raw, bhat), _safe_regime(red, point), True, detail)


def tian433_bound(point: OperatingPoint) -> Fraction:
    """``3B <= 4 alpha + 6 beta`` for (n, k, d) = (4, 3, 3)."""
    return (4 * point.alpha + 6 * point.beta) / 3


# -- linear codes, k = d ---------------------------------------------------------------


def _linear_params(params: ParamSet) -> ParamSet:
    if params.k != params.d:
        raise NotApplicableError(f"needs k = d (k={params.k}, d={params.d})")
    red = params.reduced()
    if red.n < 4:
        raise NotApplicableError("needs d + 1 >= 4")
    return red


def linear_branch_value(n: int, r: int, point: OperatingPoint) -> Fraction:
    """Un-rounded ``(r(r-1) n alpha + n(n-1) beta) / (r^2 + r)``."""
    return (r * (r - 1) * n * point.alpha + n * (n - 1) * point.beta) / (r * r + r)


def linear_bound_k_eq_d(
    params: ParamSet, point: OperatingPoint, integral: bool = True
) -> BoundReport:
    """File-size bound for linear ER codes with ``k = d``.

    ``integral=False`` drops the floor, which is what the normalized curve
    uses.
    """
    red = _linear_params(params)
    check_point(red, point)
    n, d = red.n, red.d
    a, b = point.alpha, point.beta
    hits: list[tuple[int, Fraction]] = []
    for r in range(2, n - 1):
        if d * b / r <= a <= d * b / (r - 1):
            v = linear_branch_value(n, r, point)
            hits.append((r, math.floor(v) if integral else v))
    if d * b / (n - 1) <= a <= d * b / (n - 2):
        hits.append((n - 1, (n - 2) * a + b))
    if not hits:
        raise NotApplicableError(f"alpha={a} outside [beta, d*beta]")
    r, value = hits[0]
    # adjacent branches meet at shared endpoints
    assert all(v == value for _, v in hits), hits
    value = Fraction(value)
    detail = {"r": r, "n_effective": n}
    return BoundReport(BoundId.LINEAR_K_EQ_D, value, _safe_regime(red, point), True, detail)


def fr_dual_rank_bound(params: ParamSet, point: OperatingPoint) -> Fraction:
    """``(n-k) alpha + sum_{j=n-k+1}^{n} (alpha - (j-1) beta)^+`` with ``n = d+1``."""
    red = params.reduced()
    n, k = red.n, red.k
    a, b = point.alpha, point.beta
    return (n - k) * a + sum((positive_part(a - (j - 1) * b) for j in range(n - k + 1, n + 1)), Fraction(0))


def general_rank_bound(params: ParamSet, point: OperatingPoint, integral: bool = True) -> tuple[Fraction, int]:
    """Rank lower bound for ``k = d = n - 1`` on the branch containing alpha.

    Returns the bound and the branch index ``r`` (``n - 1`` for the near-MSR
    branch ``2 alpha - beta``).
    """
    red = _linear_params(params)
    n, d = red.n, red.d
    a, b = point.alpha, point.beta
    best: Optional[tuple[Fraction, int]] = None
    for r in range(2, n - 1):
        if d * b / r <= a <= d * b / (r - 1):
            v = (2 * r * n * a - n * (n - 1) * b) / (r * r + r)
            v = Fraction(math.ceil(v)) if integral else v
            if best is None or v > best[0]:
                best = (v, r)
    if d * b / (n - 1) <= a <= d * b / (n - 2):
        v = 2 * a - b
        if best is None or v > best[0]:
            best = (v, n - 1)
    if best is None:
        raise NotApplicableError(f"alpha={a} outside [beta, d*beta]")
    return best


def rank_dual_bound(params: ParamSet, point: OperatingPoint, integral: bool = True) -> Fraction:
    """Lower bound on ``rank(H)`` for a linear ER code (on ``n = d + 1`` nodes)."""
    check_point(params, point)
    value = fr_dual_rank_bound(params, point)
    try:
        value = max(value, general_rank_bound(params, point, integral)[0])
    except NotApplicableError:
        pass
    return value


def rank_dual_file_bound(params: ParamSet, point: OperatingPoint, integral: bool = True) -> BoundReport:
    red = params.reduced()
    rank = rank_dual_bound(red, point, integral)
    bhat = cut_set_bound(red, point)
    value = red.n * point.alpha - rank
    detail = {"rank_lower_bound": rank, "n_effective": red.n}
    return BoundReport(BoundId.RANK_DUAL, min(value, bhat), _safe_regime(red, point), True, detail)


# -- combination and dispatch ------------------------------------------------------------


def combined_bound(params: ParamSet, point: OperatingPoint) -> BoundReport:
    red = params.reduced()
    b1 = repair_matrix_bound(red, point)
    b2 = improved_mt_bound(red, point)
    bhat = cut_set_bound(red, point)
    bq = min_trapezoid_bound(red, point)
    candidates = [
        ("repair_matrix", b1.value),
        ("improved_mt", b2.value),
        ("trapezoid", bq.value),
        ("cutset", bhat),
    ]
    value = min(v for _, v in candidates)
    active = next(name for name, v in candidates if v == value)
    detail = {
        "b1": b1.value,
        "b2": b2.value,
        "b1_applicable": b1.applicable,
        "active": active,
        "p": b2.detail["p"],
        "a": b2.detail["a"],
        "b": b2.detail["b"],
        "q": bq.detail["q"],
    }
    if "delta" in b1.detail:
        detail["delta"] = b1.detail["delta"]
    return BoundReport(BoundId.COMBINED, value, b1.regime, True, detail)


def _fallback(bound_id: BoundId, params: ParamSet, point: OperatingPoint, reason: str) -> BoundReport:
    red = params.reduced()
    return BoundReport(
        bound_id, cut_set_bound(red, point), _safe_regime(red, point), False, {"reason": reason}
    )


def evaluate(
    params: ParamSet, point: OperatingPoint, bound_id: BoundId | str, integral: bool = True
) -> BoundReport:
    """Evaluate one bound as a report; inapplicable bounds fall back to cut-set."""
    bound_id = BoundId(bound_id)
    check_point(params, point)
    red = params.reduced()
    if bound_id is BoundId.CUTSET:
        return BoundReport(bound_id, cut_set_bound(red, point), _safe_regime(red, point), True, {})
    if bound_id is BoundId.TRAPEZOID:
        return min_trapezoid_bound(red, point)
    if bound_id is BoundId.REPAIR_MATRIX:
        return repair_matrix_bound(red, point)
    if bound_id is BoundId.MOHAJER_TANDON:
        return mohajer_tandon_bound(red, point)
    if bound_id is BoundId.IMPROVED_MT:
        return improved_mt_bound(red, point)
    if bound_id is BoundId.COMBINED:
        return combined_bound(red, point)
    if bound_id is BoundId.TIAN433:
        if (red.n, red.k, red.d) != (4, 3, 3):
            return _fallback(bound_id, params, point, "tian433 needs (n,k,d) = (4,3,3)")
        bhat = cut_set_bound(red, point)
        raw = tian433_bound(point)
        return BoundReport(bound_id, min(raw, bhat), _safe_regime(red, point), True, {"raw": raw})
    if bound_id is BoundId.LINEAR_K_EQ_D:
        try:
            rep = linear_bound_k_eq_d(red, point, integral)
        except NotApplicableError as exc:
            return _fallback(bound_id, params, point, str(exc))
        bhat = cut_set_bound(red, point)
        return BoundReport(rep.bound_id, min(rep.value, bhat), rep.regime, True, rep.detail)
    if bound_id is BoundId.RANK_DUAL:
        return rank_dual_file_bound(red, point, integral)
    raise AssertionError(bound_id)
