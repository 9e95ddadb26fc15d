"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
from fractions import Fraction as F
from math import comb

import numpy as np
import pytest

from erbounds import bounds as eb
from erbounds.achievability import achievable_region, gap_report
from erbounds.bounds import BoundId, evaluate
from erbounds.core import OperatingPoint, ParamSet
from erbounds.curves import normalized_outer_curve
from erbounds.fr import cut_set_bound, fr_normalized_curve, mbr_point, msr_point
from erbounds.linalg import (
    build_chain,
    chain_rank_bound,
    construct_layered_code,
    gf_rank,
    random_h_repair,
    verify_chain_lemmas,
    verify_layered_code,
)

RESULTS: list[str] = []


class Criterion:
    """Collects named sub-checks, records one summary line, then asserts."""

    def __init__(self, label: str) -> None:
        self.label = label
        self.failed: list[str] = []

    def check(self, name: str, ok: bool) -> None:
        if not ok:
            self.failed.append(name)

    def finish(self) -> None:
        status = "PASS" if not self.failed else "FAIL"
        line = f"[{status}] {self.label}"
        if self.failed:
            line += " -- failed: " + "; ".join(self.failed)
        RESULTS.append(line)
        print(line)
        assert not self.failed, line


def test_ac1_635_characterization():
    c = Criterion("AC1 (6,3,5) repair-matrix characterization")
    p = ParamSet(6, 3, 5)
    c.check("B1(16,4) = 296/7", eb.repair_matrix_bound(p, OperatingPoint(16, 4)).value == F(296, 7))
    c.check("B1(13,4) = 38", eb.repair_matrix_bound(p, OperatingPoint(13, 4)).value == 38)
    curve = normalized_outer_curve(p, BoundId.REPAIR_MATRIX)
    stated = {(F(1, 27), F(1, 9)), (F(2, 19), F(13, 38)), (F(1, 12), F(5, 12))}
    c.check(f"curve vertices == {{(1/27,1/9),(2/19,13/38),(1/12,5/12)}} (got {{{', '.join(f'({x},{y})' for x, y in curve.xy)}}})", set(curve.xy) == stated)
    c.check("gap_report identically zero", all(g == 0 for _, g in gap_report(p, BoundId.REPAIR_MATRIX)))
    c.finish()


def test_ac2_544_linear():
    c = Criterion("AC2 (5,4,4) linear characterization and layered code")
    p = ParamSet(5, 4, 4)
    c.check("linear bound(6,3) = 20", eb.linear_bound_k_eq_d(p, OperatingPoint(6, 3)).value == 20)
    code = construct_layered_code(5, 3)
    c.check("B=20, alpha=6, beta=3", (code.file_size, code.alpha, code.beta) == (20, 6, 3))
    c.check("rank(parity) = 10 = ceil(10(alpha-beta)/3)", gf_rank(code.parity) == 10 == -(-10 * (6 - 3) // 3))
    rep = verify_layered_code(code)
    c.check(f"all five layered checks pass {rep.checks}", rep.ok and len(rep.checks) == 5)
    c.finish()


def test_ac3_tian():
    c = Criterion("AC3 Tian (4,3,3) bound")
    for beta in (F(1), F(2), F(7, 3)):
        mbr = mbr_point(ParamSet(4, 3, 3), beta)
        c.check(f"alpha=3beta gives 6beta (beta={beta})", eb.tian433_bound(OperatingPoint(3 * beta, beta)) == 6 * beta == mbr.file_size)
    c.check("(4,3) -> 34/3", eb.tian433_bound(OperatingPoint(4, 3)) == F(34, 3))
    c.finish()


def _grid(params: ParamSet, count: int = 50) -> list[OperatingPoint]:
    return [OperatingPoint(1 + (params.d - 1) * F(i, count - 1), 1) for i in range(count)]


def test_ac4_improved_mt_dominance():
    c = Criterion("AC4 improved-MT dominance")
    p = ParamSet(13, 7, 12)
    pairs = [(eb.improved_mt_bound(p, x).value, eb.mohajer_tandon_bound(p, x).value) for x in _grid(p)]
    c.check("(13,7,12) improved <= MT on grid", all(a <= b for a, b in pairs))
    c.check("(13,7,12) strict somewhere", any(a < b for a, b in pairs))
    q = ParamSet(6, 5, 5)
    c.check(
        "(6,5,5) equality on grid",
        all(eb.improved_mt_bound(q, x).value == eb.mohajer_tandon_bound(q, x).value for x in _grid(q)),
    )
    c.finish()


def test_ac5_655_tradeoff():
    c = Criterion("AC5 (6,5,5) layered tradeoff")
    p = ParamSet(6, 5, 5)
    ach = achievable_region(p)
    segs = list(zip(ach.xy, ach.xy[1:]))
    c.check("four hull segments", len(segs) == 4)
    for r, seg in zip((2, 3, 4), segs):
        c.check(f"r={r} segment equation", all(r * (r - 1) * 6 * y + 30 * x == r * r + r for x, y in seg))
    if segs:
        c.check("4 abar + bbar = 1 on last segment", all(4 * y + x == 1 for x, y in segs[-1]))
    c.check("vertex-by-vertex equal to linear outer curve", ach.xy == normalized_outer_curve(p, BoundId.LINEAR_K_EQ_D).xy)
    c.finish()


def test_ac6_nonvanishing_gap():
    c = Criterion("AC6 non-vanishing gap for (7,5,6)")
    p = ParamSet(7, 5, 6)
    m = p.msr_ratio
    cases = []
    for mu in range(0, p.k - 1):
        for nu in (F(0), F(1, 2)):
            if mu == 0 and nu == 0:
                continue
            if mu == p.k - 2 and not nu < F(m, m + 1):
                continue
            cases.append((mu, nu))
    c.check("all seven (mu, nu) regimes covered", len(cases) == 7)
    for mu, nu in cases:
        gaps = []
        for b in (F(6), F(12)):
            x = OperatingPoint((p.d - mu) * b - nu * b, b)
            gaps.append((cut_set_bound(p, x) - eb.repair_matrix_bound(p, x).value) / b)
        c.check(f"mu={mu}, nu={nu}: equal and positive {gaps}", gaps[0] == gaps[1] and gaps[0] > 0)
    c.finish()


def test_ac7_property_suites():
    c = Criterion("AC7 property suites (random H_repair chains, rank bounds, curve sandwich)")
    dual = eb.fr_dual_rank_bound(ParamSet(5, 4, 4), OperatingPoint(4, 2))
    counts = {"fr_dual": 0, "rank_order": 0, "a": 0, "b": 0, "c": 0, "thm7": 0}
    for field_char in (2, 3):
        for trial in range(100):
            h = random_h_repair(5, 4, 2, field_char, np.random.default_rng([field_char, trial]), k=4)
            if gf_rank(h.base) < dual:
                counts["fr_dual"] += 1
            chain = build_chain(h)
            for v in verify_chain_lemmas(chain).violations:
                counts[v["check"]] += 1
            for s in (1, 2):
                if chain.rank(5) < chain_rank_bound(chain, s, 5):
                    counts["thm7"] += 1
    for name, n_bad in counts.items():
        c.check(f"{name}: {n_bad} violations", n_bad == 0)
    for nkd in [(6, 3, 5), (6, 5, 5), (5, 4, 4), (13, 7, 12)]:
        p = ParamSet(*nkd)
        fr, ach = fr_normalized_curve(p), achievable_region(p)
        ids = [BoundId.CUTSET, BoundId.MOHAJER_TANDON, BoundId.IMPROVED_MT, BoundId.COMBINED, BoundId.RANK_DUAL]
        if p.k >= 3:
            ids.append(BoundId.REPAIR_MATRIX)
        if p.k == p.d:
            ids.append(BoundId.LINEAR_K_EQ_D)
        for bid in ids:
            curve = normalized_outer_curve(p, bid)
            xs = {x for x, _ in curve.xy + fr.xy + ach.xy}
            above = all(curve.alpha_at(x) >= fr.alpha_at(x) for x in xs if x >= curve.beta_range[0])
            lo = max(curve.beta_range[0], ach.beta_range[0])
            below = all(curve.alpha_at(x) <= ach.alpha_at(x) for x in xs if x >= lo)
            c.check(f"{nkd} {bid.value} between FR and achievable", above and below)
    c.finish()


def test_ac8_cut_set_sanity():
    c = Criterion("AC8 cut-set sanity on 200 random instances")
    rng = random.Random(2024)
    bad_closed, bad_le = 0, 0
    for _ in range(200):
        n = rng.randint(3, 12)
        d = rng.randint(2, n - 1)
        k = rng.randint(2, d)
        p = ParamSet(n, k, d)
        beta = F(rng.randint(1, 20), rng.randint(1, 6))
        msr, mbr = msr_point(p, beta), mbr_point(p, beta)
        if cut_set_bound(p, msr.point) != k * (d - k + 1) * beta:
            bad_closed += 1
        if cut_set_bound(p, mbr.point) != (d * k - comb(k, 2)) * beta:
            bad_closed += 1
        x = OperatingPoint(beta + (d - 1) * beta * F(rng.randint(0, 97), 97), beta)
        bhat = cut_set_bound(p, x)
        for bid in BoundId:
            if evaluate(p, x, bid).value > bhat:
                bad_le += 1
    c.check(f"closed forms ({bad_closed} mismatches)", bad_closed == 0)
    c.check(f"every bound <= cut-set ({bad_le} violations)", bad_le == 0)
    c.finish()


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
