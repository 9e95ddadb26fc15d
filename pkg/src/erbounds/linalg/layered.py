"""Canonical layered codes: one single-parity codelet per r-subset of nodes.

Node ``i`` stores one symbol ``(T, i)`` for every r-subset ``T`` containing
it, so ``alpha = C(n-1, r-1)``.  A failed node rebuilds ``(T, i)`` as the sum
of the other ``r - 1`` symbols of codelet ``T``; helper ``j`` sends one
symbol per codelet shared with ``i``, i.e. ``beta = C(n-2, r-2)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from ..core import DomainError, OperatingPoint, ParamSet
from .gf import GFMatrix, gf_rank, nullspace
from .hrepair import BlockMatrix, validate_h_repair


@dataclass(frozen=True)
class LayeredCode:
    n: int
    r: int
    codelets: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[tuple[int, ...], int], ...]
    parity: GFMatrix
    generator: GFMatrix
    field_char: int = 2

    @property
    def alpha(self) -> int:
        return comb(self.n - 1, self.r - 1)

    @property
    def beta(self) -> int:
        return comb(self.n - 2, self.r - 2)

    @property
    def file_size(self) -> int:
        return (self.r - 1) * comb(self.n, self.r)

    def coord_index(self, subset: tuple[int, ...], node: int) -> int:
        return self.coords.index((subset, node))

    def node_columns(self, node: int) -> list[int]:
        return list(range((node - 1) * self.alpha, node * self.alpha))


def construct_layered_code(n: int, r: int) -> LayeredCode:
    if n < 4:
        raise DomainError(f"layered codes need n >= 4 (n={n})")
    if not 2 <= r <= n - 1:
        raise DomainError(f"2 <= r <= n-1 violated (r={r}, n={n})")
    subsets = tuple(itertools.combinations(range(1, n + 1), r))
    coords = tuple((T, i) for i in range(1, n + 1) for T in subsets if i in T)
    index = {c: pos for pos, c in enumerate(coords)}
    parity = np.zeros((len(subsets), len(coords)), dtype=np.int64)
    for row, T in enumerate(subsets):
        for i in T:
            parity[row, index[(T, i)]] = 1
    P = GFMatrix(2, parity)
    G = nullspace(P).T
    return LayeredCode(n, r, subsets, coords, P, G)


def h_repair_of(code: LayeredCode) -> BlockMatrix:
    """Per-node repair equations stacked into the block form (rows in node order)."""
    index = {c: pos for pos, c in enumerate(code.coords)}
    size = len(code.coords)
    data = np.zeros((size, size), dtype=np.int64)
    for row, (T, i) in enumerate(code.coords):
        for j in T:
            data[row, index[(T, j)]] = 1
    return BlockMatrix(GFMatrix(2, data), code.n, code.alpha, code.beta)


@dataclass
class LayeredReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_layered_code(code: LayeredCode) -> LayeredReport:
    from ..bounds import rank_dual_bound

    rep = LayeredReport()
    G, P = code.generator, code.parity
    n, B = code.n, code.file_size

    rank_g = gf_rank(G)
    orth = not np.any((G @ P.T).data)
    rep.details["rank_generator"] = rank_g
    rep.checks["generator_rank"] = rank_g == B and orth

    failures = []
    for lost in range(1, n + 1):
        keep = [c for j in range(1, n + 1) if j != lost for c in code.node_columns(j)]
        if gf_rank(G.cols_at(keep)) != B:
            failures.append(lost)
    rep.details["data_collection_failures"] = failures
    rep.checks["data_collection"] = not failures

    bad_repair, max_sent = [], 0
    for lost in range(1, n + 1):
        sent = {j: 0 for j in range(1, n + 1) if j != lost}
        for T in code.codelets:
            if lost not in T:
                continue
            target = G.data[:, code.coord_index(T, lost)]
            acc = np.zeros_like(target)
            for j in T:
                if j != lost:
                    acc = (acc + G.data[:, code.coord_index(T, j)]) % 2
                    sent[j] += 1
            if not np.array_equal(acc, target):
                bad_repair.append([list(T), lost])
        max_sent = max(max_sent, *sent.values())
    rep.details["max_symbols_per_helper"] = max_sent
    rep.checks["exact_repair"] = not bad_repair and max_sent <= code.beta

    h = h_repair_of(code)
    hrep = validate_h_repair(h, k=n - 1)
    rep.details["h_repair_violations"] = hrep.violations
    rep.checks["h_repair"] = hrep.ok

    rank_h = gf_rank(h.base)
    params = ParamSet(n, n - 1, n - 1)
    bound = rank_dual_bound(params, OperatingPoint(code.alpha, code.beta))
    rep.details["rank_h"] = rank_h
    rep.details["rank_lower_bound"] = bound
    rep.checks["rank_bound_tight"] = rank_h == bound == Fraction(n * code.alpha - B)
    return rep
