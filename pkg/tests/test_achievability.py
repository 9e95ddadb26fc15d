from __future__ import annotations

from fractions import Fraction as F

import pytest

from erbounds.achievability import achievable_points, achievable_region, gap_report, known_interior_points, layered_points
from erbounds.bounds import BoundId
from erbounds.core import DomainError, NormalizedPoint, OperatingPoint, ParamSet, normalize
from erbounds.fr import fr_normalized_curve, mbr_point, msr_point
from oracles import layered_normalized


def test_layered_points_examples():
    pts = {p.r: p.point for p in layered_points(5)}
    assert pts[2] == NormalizedPoint(F(2, 5), F(1, 10))
    assert pts[3] == NormalizedPoint(F(3, 10), F(3, 20))
    assert {p.r: p.point for p in layered_points(6)}[5] == NormalizedPoint(F(5, 24), F(1, 6))
    with pytest.raises(DomainError):
        layered_points(3)


@pytest.mark.parametrize("n", range(4, 11))
def test_layered_points_match_code_parameters(n):
    for ap in layered_points(n):
        assert (ap.point.alpha_bar, ap.point.beta_bar) == layered_normalized(n, ap.r)


def test_layered_r2_is_mbr():
    p = ParamSet(5, 4, 4)
    mbr = mbr_point(p, 1)
    assert layered_points(5)[0].point == normalize(mbr.point, mbr.file_size)


def test_layered_last_on_fr_curve():
    fr = fr_normalized_curve(ParamSet(6, 5, 5))
    last = layered_points(6)[-1].point
    assert fr.alpha_at(last.beta_bar) == last.alpha_bar


@pytest.mark.parametrize("n", range(4, 11))
def test_layered_monotone(n):
    pts = [p.point for p in layered_points(n)]
    assert all(a.beta_bar < b.beta_bar and a.alpha_bar > b.alpha_bar for a, b in zip(pts, pts[1:]))


def test_known_interior_points():
    assert [p.point for p in known_interior_points(ParamSet(6, 3, 5))] == [NormalizedPoint(F(13, 38), F(2, 19))]
    assert known_interior_points(ParamSet(5, 4, 4)) == []
    assert known_interior_points(ParamSet(7, 4, 6)) == []


@pytest.mark.parametrize("n", range(4, 11))
def test_k_eq_d_hull_vertices_are_layered_plus_msr(n):
    p = ParamSet(n, n - 1, n - 1)
    msr = msr_point(p, 1)
    want = {ap.point.xy for ap in layered_points(n)} | {normalize(msr.point, msr.file_size).xy}
    assert set(achievable_region(p).xy) == want


def test_635_region():
    c = achievable_region(ParamSet(6, 3, 5))
    assert c.xy == [(F(1, 12), F(5, 12)), (F(2, 19), F(13, 38)), (F(1, 9), F(1, 3))]


def test_433_region_includes_layered():
    xy = achievable_region(ParamSet(4, 3, 3)).xy
    for ap in layered_points(4):
        assert ap.point.xy in xy


def test_gap_reports():
    assert all(g == 0 for _, g in gap_report(ParamSet(6, 3, 5), BoundId.REPAIR_MATRIX))
    assert all(g == 0 for _, g in gap_report(ParamSet(6, 5, 5), BoundId.LINEAR_K_EQ_D))
    gaps = gap_report(ParamSet(6, 5, 5), BoundId.CUTSET)
    assert all(g >= 0 for _, g in gaps) and any(g > 0 for _, g in gaps)


def test_points_labelled():
    labels = [p.label for p in achievable_points(ParamSet(5, 4, 4))]
    assert labels[:2] == ["MSR", "MBR"] and "layered(3)" in labels
