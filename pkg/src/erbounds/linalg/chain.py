"""Nested intersection chain ``H^(n), H^(n-1), ..., H^(3)`` of an H_repair matrix.

``H^(n)`` is H_repair itself.  Going down one level, thick column ``j`` of
``H^(t)`` is a basis of ``S(H^(t+1)_j) ∩ S(H^(t+1)|_{n-t..j-1})`` for
``j = n-t+1..n``.  Blocks ``A^(t)_{i,j}`` are the node-``i`` rows of
``H^(t)_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import DomainError
from .gf import GFMatrix, gf_rank, hstack, intersection_basis
from .hrepair import BlockMatrix, validate_h_repair


@dataclass
class ChainState:
    n: int
    alpha: int
    field_char: int
    # levels[t][j] is the thick column H^(t)_j, for n-t+1 <= j <= n
    levels: dict[int, dict[int, GFMatrix]] = field(default_factory=dict)

    def thick(self, t: int, j: int) -> GFMatrix:
        return self.levels[t][j]

    def block(self, t: int, i: int, j: int) -> GFMatrix:
        col = self.levels[t][j]
        return GFMatrix(self.field_char, col.data[(i - 1) * self.alpha : i * self.alpha, :])

    def restrict(self, t: int, lo: int, hi: int) -> GFMatrix:
        """``H^(t)|_{lo..hi}``; empty when ``hi < lo``."""
        cols = [self.levels[t][j] for j in range(lo, hi + 1)]
        return hstack(cols, rows=self.n * self.alpha, p=self.field_char)

    def matrix(self, t: int) -> GFMatrix:
        return self.restrict(t, self.n - t + 1, self.n)

    def rank(self, t: int) -> int:
        return gf_rank(self.matrix(t))

    def ranks(self) -> dict[int, int]:
        return {t: self.rank(t) for t in sorted(self.levels, reverse=True)}


def build_chain(h: BlockMatrix) -> ChainState:
    n = h.n
    if n < 3:
        raise DomainError("a chain needs n >= 3")
    rep = validate_h_repair(h)
    if not rep.ok:
        raise DomainError(f"not a valid H_repair matrix: {rep.violations or 'degenerate beta'}")
    chain = ChainState(n, h.alpha, h.field_char)
    chain.levels[n] = {j: h.thick_column(j) for j in range(1, n + 1)}
    for t in range(n - 1, 2, -1):
        level = {}
        for j in range(n - t + 1, n + 1):
            prefix = chain.restrict(t + 1, n - t, j - 1)
            level[j] = intersection_basis(chain.thick(t + 1, j), prefix)
        chain.levels[t] = level
    return chain


@dataclass
class ChainReport:
    ranks: dict[int, int]
    violations: list[dict] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_chain_lemmas(chain: ChainState) -> ChainReport:
    """Rank ordering along the chain and the three per-block rank relations."""
    n = chain.n
    rho = gf_rank
    rep = ChainReport(chain.ranks())
    ts = sorted(chain.levels, reverse=True)
    for hi, lo in zip(ts, ts[1:]):
        rep.checked += 1
        if rep.ranks[hi] < rep.ranks[lo]:
            rep.violations.append({"check": "rank_order", "t": lo, "ranks": [rep.ranks[hi], rep.ranks[lo]]})
    for t in ts:
        for j in range(n - t + 1, n + 1):
            rep.checked += 1
            a, b = rho(chain.thick(t, j)), rho(chain.block(t, j, j))
            if a != b:
                rep.violations.append({"check": "a", "t": t, "j": j, "lhs": a, "rhs": b})
            if t == n:
                continue
            rep.checked += 1
            step = rho(chain.restrict(t + 1, n - t, j)) - rho(chain.restrict(t + 1, n - t, j - 1))
            rhs = rho(chain.block(t + 1, j, j)) - step
            if b != rhs:
                rep.violations.append({"check": "b", "t": t, "j": j, "lhs": b, "rhs": rhs})
            if j >= n - t + 2:
                rep.checked += 1
                lhs = b + sum(rho(chain.block(t, j, l)) for l in range(n - t + 1, j))
                rhs_c = sum(rho(chain.block(t + 1, j, l)) for l in range(n - t, j))
                if lhs > rhs_c:
                    rep.violations.append({"check": "c", "t": t, "j": j, "lhs": lhs, "rhs": rhs_c})
    return rep


def chain_rank_bound(chain: ChainState, s: int, t: int) -> Fraction:
    """Right-hand side of the depth-``s`` rank bound on ``H^(t)``."""
    n = chain.n
    if not (1 <= s <= n - 3 and 3 + s <= t <= n):
        raise DomainError(f"(s, t) = ({s}, {t}) outside 1 <= s <= n-3, 3+s <= t <= n")
    diag = sum(gf_rank(chain.block(t, j, j)) for j in range(n - t + 1, n + 1))
    off = sum(
        gf_rank(chain.block(t, j, l)) for j in range(n - t + 2, n + 1) for l in range(n - t + 1, j)
    )
    return Fraction(2, (s + 1) * (s + 2)) * ((s + 1) * diag - off)


def check_chain_rank_bounds(chain: ChainState) -> list[dict]:
    """Every ``(s, t)`` instance of the chain rank bound; returns the failures."""
    n = chain.n
    bad = []
    for s in range(1, n - 2):
        for t in range(3 + s, n + 1):
            bound = chain_rank_bound(chain, s, t)
            r = chain.rank(t)
            if r < bound:
                bad.append({"s": s, "t": t, "rank": r, "bound": str(bound)})
    return bad
