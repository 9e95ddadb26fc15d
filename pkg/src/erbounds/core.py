"""Exact scalars, parameter sets, regimes and piecewise-linear curve geometry.

Every quantity in the package is a :class:`fractions.Fraction`.  Floats are
rejected at the boundary so that tradeoff equalities can be checked exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


class NotApplicableError(DomainError):
    """A bound or formula does not apply to the given parameters or regime."""


def as_rat(x: RatLike) -> Fraction:
    """Coerce ``x`` to a Fraction; floats and decimal strings are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {type(x).__name__}")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction in lowest terms."""
    m = _RAT_RE.match(text)
    if m is None:
        raise DomainError(f"not a rational of the form p/q or integer: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(x: Fraction) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` for integers."""
    return str(Fraction(x))


def positive_part(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


@dataclass(frozen=True)
class ParamSet:
    """Code parameters (n, k, d) with ``2 <= k <= d <= n - 1``."""

    n: int
    k: int
    d: int

    def __post_init__(self) -> None:
        for name in ("n", "k", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int")
        if not 2 <= self.k:
            raise DomainError(f"k >= 2 violated (k={self.k})")
        self._check_order()

    def _check_order(self) -> None:
        if not self.k <= self.d:
            raise DomainError(f"k <= d violated (k={self.k}, d={self.d})")
        if not self.d <= self.n - 1:
            raise DomainError(f"d <= n-1 violated (d={self.d}, n={self.n})")

    @classmethod
    def relaxed(cls, n: int, k: int, d: int) -> "ParamSet":
        """Build a parameter set allowing ``k = 1`` (degenerate test cases)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "k", k)
        object.__setattr__(obj, "d", d)
        if k < 1:
            raise DomainError(f"k >= 1 violated (k={k})")
        obj._check_order()
        return obj

    def reduced(self) -> "ParamSet":
        """The same code restricted to ``d + 1`` nodes."""
        if self.n == self.d + 1:
            return self
        return ParamSet.relaxed(self.d + 1, self.k, self.d)

    @property
    def msr_ratio(self) -> int:
        """alpha / beta at the MSR point."""
        return self.d - self.k + 1


@dataclass(frozen=True)
class OperatingPoint:
    """Storage ``alpha`` and per-helper download ``beta`` (``0 < beta <= alpha``)."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        object.__setattr__(self, "beta", as_rat(self.beta))
        if not self.beta > 0:
            raise DomainError(f"beta > 0 violated (beta={self.beta})")
        if not self.beta <= self.alpha:
            raise DomainError(f"beta <= alpha violated (alpha={self.alpha}, beta={self.beta})")

    def scaled(self, c: RatLike) -> "OperatingPoint":
        c = as_rat(c)
        return OperatingPoint(self.alpha * c, self.beta * c)


@dataclass(frozen=True)
class Regime:
    """Decomposition ``alpha = (d - mu) * beta - theta`` with ``theta in [0, beta)``."""

    mu: int
    theta: Fraction
    nu: Fraction
    beta: Fraction


@dataclass(frozen=True)
class NormalizedPoint:
    """A point ``(alpha / B, beta / B)`` of the normalized tradeoff plane."""

    alpha_bar: Fraction
    beta_bar: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha_bar", as_rat(self.alpha_bar))
        object.__setattr__(self, "beta_bar", as_rat(self.beta_bar))
        if not (self.alpha_bar > 0 and self.beta_bar > 0):
            raise DomainError("normalized coordinates must be positive")
        if not self.beta_bar <= self.alpha_bar:
            raise DomainError("beta_bar <= alpha_bar violated")

    @property
    def xy(self) -> tuple[Fraction, Fraction]:
        """Plot coordinates (beta_bar, alpha_bar)."""
        return (self.beta_bar, self.alpha_bar)


def check_point(params: ParamSet, point: OperatingPoint) -> None:
    """Raise DomainError unless ``beta <= alpha <= d * beta``."""
    if point.alpha > params.d * point.beta:
        raise DomainError(
            f"alpha <= d*beta violated (alpha={point.alpha}, d*beta={params.d * point.beta})"
        )


def regime_of(params: ParamSet, point: OperatingPoint) -> Regime:
    """Locate ``point`` on the FR tradeoff: ``alpha = (d - mu) beta - theta``.

    A point exactly on a corner ``alpha = (d - mu) beta`` gets ``theta = 0``.
    Points below the MSR storage ``(d - k + 1) beta`` have no regime and are
    rejected.
    """
    check_point(params, point)
    a, b = point.alpha, point.beta
    if a < params.msr_ratio * b:
        raise DomainError(
            f"alpha >= (d-k+1)*beta violated (alpha={a}, (d-k+1)*beta={params.msr_ratio * b})"
        )
    mu = params.d - math.ceil(a / b)
    theta = (params.d - mu) * b - a
    return Regime(mu=mu, theta=theta, nu=theta / b, beta=b)


def normalize(point: OperatingPoint, file_size: RatLike) -> NormalizedPoint:
    B = as_rat(file_size)
    if B <= 0:
        raise DomainError(f"file size must be positive (B={B})")
    return NormalizedPoint(point.alpha / B, point.beta / B)


# -- curve geometry, in (x, y) = (beta_bar, alpha_bar) ---------------------------------

XY = tuple[Fraction, Fraction]


def cross(o: XY, a: XY, b: XY) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _drop_collinear(pts: list[XY]) -> list[XY]:
    out: list[XY] = []
    for p in pts:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and cross(out[-2], out[-1], p) == 0:
            out.pop()
        out.append(p)
    return out


@dataclass(frozen=True)
class PLCurve:
    """Piecewise-linear curve ``alpha_bar(beta_bar)``, non-increasing.

    Vertices are ordered by strictly increasing ``beta_bar``; collinear
    interior vertices are merged away at construction.
    """

    vertices: tuple[NormalizedPoint, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise DomainError("a curve needs at least one vertex")
        xy = _drop_collinear([v.xy for v in self.vertices])
        for (x0, y0), (x1, y1) in zip(xy, xy[1:]):
            if not x0 < x1:
                raise DomainError("curve vertices must be strictly increasing in beta_bar")
            if y1 > y0:
                raise DomainError("curve must be non-increasing in alpha_bar")
        object.__setattr__(
            self, "vertices", tuple(NormalizedPoint(alpha_bar=y, beta_bar=x) for x, y in xy)
        )

    @classmethod
    def from_xy(cls, pts: Iterable[XY]) -> "PLCurve":
        return cls(tuple(NormalizedPoint(alpha_bar=y, beta_bar=x) for x, y in pts))

    @property
    def xy(self) -> list[XY]:
        return [v.xy for v in self.vertices]

    @property
    def beta_range(self) -> tuple[Fraction, Fraction]:
        return (self.vertices[0].beta_bar, self.vertices[-1].beta_bar)

    def alpha_at(self, beta_bar: RatLike) -> Fraction:
        """Minimum normalized storage at ``beta_bar``.

        Right of the last vertex the curve continues flat (extra bandwidth is
        free); left of the first vertex there is no feasible point.
        """
        x = as_rat(beta_bar)
        pts = self.xy
        if x < pts[0][0]:
            raise DomainError(f"beta_bar={x} lies left of the curve")
        if x >= pts[-1][0]:
            return pts[-1][1]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError("unreachable")

    def is_convex(self) -> bool:
        pts = self.xy
        return all(cross(a, b, c) > 0 for a, b, c in zip(pts, pts[1:], pts[2:]))


def monotone_lower_hull(points: Sequence[XY]) -> list[XY]:
    """Lower-left convex envelope of ``points`` in the (x, y) plane.

    The result starts at the leftmost (then lowest) point and ends at the
    lowest (then leftmost) point; everything else lies on or above/right of it.
    """
    if not points:
        raise DomainError("cannot take the hull of an empty point set")
    pts = sorted(set(points))
    hull: list[XY] = []
    for p in pts:
        while len(hull) >= 2 and cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    # cut the rising tail: keep up to the first vertex attaining the minimum y
    ymin = min(y for _, y in hull)
    end = next(i for i, (_, y) in enumerate(hull) if y == ymin)
    return hull[: end + 1]


def lower_hull(points: Iterable[NormalizedPoint]) -> PLCurve:
    """Space-sharing envelope of a set of achievable normalized points."""
    pts = [p.xy for p in points]
    return PLCurve.from_xy(monotone_lower_hull(pts))
