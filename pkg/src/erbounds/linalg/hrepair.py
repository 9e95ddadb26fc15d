"""Block structure of exact-repair parity-check matrices.

A matrix ``H`` of size ``n*alpha x n*alpha`` is viewed as ``n x n`` blocks of
size ``alpha``; node labels are 1-based.  An H_repair matrix has identity
diagonal blocks and off-diagonal blocks of rank at most ``beta``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core import DomainError
from .gf import GFMatrix, gf_rank


@dataclass(frozen=True)
class BlockMatrix:
    base: GFMatrix
    n: int
    alpha: int
    beta_cap: int

    def __post_init__(self) -> None:
        size = self.n * self.alpha
        if (self.base.rows, self.base.cols) != (size, size):
            raise DomainError(
                f"expected a {size}x{size} matrix for n={self.n}, alpha={self.alpha}, "
                f"got {self.base.rows}x{self.base.cols}"
            )

    @property
    def field_char(self) -> int:
        return self.base.field_char

    def _span(self, i: int) -> slice:
        if not 1 <= i <= self.n:
            raise DomainError(f"node index {i} outside 1..{self.n}")
        return slice((i - 1) * self.alpha, i * self.alpha)

    def block(self, i: int, j: int) -> GFMatrix:
        return GFMatrix(self.field_char, self.base.data[self._span(i), self._span(j)])

    def thick_column(self, j: int) -> GFMatrix:
        return GFMatrix(self.field_char, self.base.data[:, self._span(j)])

    def restrict(self, nodes) -> GFMatrix:
        """``H|_S``: the thick columns of the nodes in ``S``."""
        nodes = list(nodes)
        if not nodes:
            return GFMatrix.zeros(self.field_char, self.base.rows, 0)
        return GFMatrix(self.field_char, np.hstack([self.base.data[:, self._span(j)] for j in nodes]))


@dataclass
class HRepairReport:
    n: int
    alpha: int
    beta_cap: int
    k: Optional[int]
    violations: list[dict] = field(default_factory=list)
    degenerate: bool = False
    max_offdiag_rank: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.degenerate


def validate_h_repair(h: BlockMatrix, k: Optional[int] = None) -> HRepairReport:
    """Check identity diagonals, off-diagonal ranks and (given ``k``) data collection."""
    rep = HRepairReport(h.n, h.alpha, h.beta_cap, k)
    if h.beta_cap < 1:
        rep.degenerate = True
    eye = GFMatrix.identity(h.field_char, h.alpha)
    for i in range(1, h.n + 1):
        if h.block(i, i) != eye:
            rep.violations.append({"check": "identity_diagonal", "block": [i, i]})
        for j in range(1, h.n + 1):
            if i == j:
                continue
            r = gf_rank(h.block(i, j))
            rep.max_offdiag_rank = max(rep.max_offdiag_rank, r)
            if r > h.beta_cap:
                rep.violations.append({"check": "offdiag_rank", "block": [i, j], "rank": r, "cap": h.beta_cap})
    if k is not None:
        if not 1 <= k <= h.n - 1:
            raise DomainError(f"k={k} outside 1..n-1")
        want = (h.n - k) * h.alpha
        for subset in itertools.combinations(range(1, h.n + 1), h.n - k):
            r = gf_rank(h.restrict(subset))
            if r != want:
                rep.violations.append({"check": "data_collection", "nodes": list(subset), "rank": r, "expected": want})
    return rep


@dataclass
class IncrementalRanks:
    deltas: list[int]
    lower: list[int]
    rank: int

    @property
    def ok(self) -> bool:
        return sum(self.deltas) == self.rank and all(d >= lo for d, lo in zip(self.deltas, self.lower))


def incremental_ranks(h: BlockMatrix) -> IncrementalRanks:
    """``delta_j = rank(H|_[j]) - rank(H|_[j-1])`` and their per-node lower bounds."""
    deltas, lower = [], []
    prev = 0
    for j in range(1, h.n + 1):
        cur = gf_rank(h.restrict(range(1, j + 1)))
        deltas.append(cur - prev)
        prev = cur
        lo = gf_rank(h.block(j, j)) - sum(gf_rank(h.block(j, l)) for l in range(1, j))
        lower.append(max(lo, 0))
    return IncrementalRanks(deltas, lower, gf_rank(h.base))


def random_h_repair(
    n: int,
    alpha: int,
    beta: int,
    p: int,
    rng: np.random.Generator,
    k: Optional[int] = None,
    max_tries: int = 1000,
) -> BlockMatrix:
    """Random H_repair: identity diagonal, off-diagonal blocks ``U V`` of rank <= beta.

    With ``k`` given, samples failing the data-collection condition are
    redrawn from the same generator.
    """
    for _ in range(max_tries):
        data = np.zeros((n * alpha, n * alpha), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                rows = slice(i * alpha, (i + 1) * alpha)
                cols = slice(j * alpha, (j + 1) * alpha)
                if i == j:
                    data[rows, cols] = np.eye(alpha, dtype=np.int64)
                else:
                    u = rng.integers(0, p, size=(alpha, beta))
                    v = rng.integers(0, p, size=(beta, alpha))
                    data[rows, cols] = (u @ v) % p
        h = BlockMatrix(GFMatrix(p, data), n, alpha, beta)
        if k is None or validate_h_repair(h, k).ok:
            return h
    raise DomainError(f"no valid H_repair sample in {max_tries} tries")
