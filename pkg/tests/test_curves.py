from __future__ import annotations

from fractions import Fraction as F

import pytest

from erbounds.achievability import achievable_region
from erbounds.bounds import BoundId, evaluate
from erbounds.core import NotApplicableError, OperatingPoint, ParamSet
from erbounds.curves import bound_pieces, normalized_outer_curve, structural_points, upward_closure_boundary
from erbounds.fr import fr_normalized_curve

CASES = [(6, 3, 5), (6, 5, 5), (5, 4, 4), (13, 7, 12), (7, 5, 6), (4, 3, 3)]


def outer_ids(params):
    ids = [BoundId.CUTSET, BoundId.MOHAJER_TANDON, BoundId.IMPROVED_MT, BoundId.COMBINED, BoundId.RANK_DUAL]
    if params.k >= 3:
        ids.append(BoundId.REPAIR_MATRIX)
    if params.k == params.d and params.d >= 3:
        ids.append(BoundId.LINEAR_K_EQ_D)
    if (params.n, params.k, params.d) == (4, 3, 3):
        ids.append(BoundId.TIAN433)
    return ids


def test_repair_matrix_635_curve():
    c = normalized_outer_curve(ParamSet(6, 3, 5), BoundId.REPAIR_MATRIX)
    assert c.xy == [(F(1, 12), F(5, 12)), (F(2, 19), F(13, 38)), (F(1, 9), F(1, 3))]


def test_linear_655_segments():
    c = normalized_outer_curve(ParamSet(6, 5, 5), BoundId.LINEAR_K_EQ_D)
    segs = list(zip(c.xy, c.xy[1:]))
    assert len(segs) == 4
    for r, ((x0, y0), (x1, y1)) in zip((2, 3, 4), segs):
        for x, y in ((x0, y0), (x1, y1)):
            assert r * (r - 1) * 6 * y + 30 * x == r * r + r
    (x0, y0), (x1, y1) = segs[-1]
    assert 4 * y0 + x0 == 1 and 4 * y1 + x1 == 1


@pytest.mark.parametrize("nkd", CASES)
def test_cutset_curve_is_fr_curve(nkd):
    p = ParamSet(*nkd)
    assert normalized_outer_curve(p, BoundId.CUTSET) == fr_normalized_curve(p)


def test_inapplicable_curves():
    with pytest.raises(NotApplicableError):
        normalized_outer_curve(ParamSet(5, 2, 4), BoundId.REPAIR_MATRIX)
    with pytest.raises(NotApplicableError):
        normalized_outer_curve(ParamSet(6, 3, 5), BoundId.LINEAR_K_EQ_D)
    with pytest.raises(NotApplicableError):
        normalized_outer_curve(ParamSet(5, 4, 4), BoundId.TIAN433)


@pytest.mark.parametrize("nkd", CASES)
def test_pieces_agree_with_pointwise_bounds(nkd):
    """Dense check: the exact piecewise evaluation reproduces the bound functions."""
    p = ParamSet(*nkd)
    for bid in outer_ids(p):
        if bid is BoundId.COMBINED and p.d > 8:
            continue
        pieces = [pc for pc in bound_pieces(p, bid) if len(pc) > 1]
        integral = False
        for piece in pieces:
            for (a0, b0), (a1, b1) in zip(piece, piece[1:]):
                for t in (F(1, 7), F(1, 2), F(5, 6)):
                    a = a0 + (a1 - a0) * t
                    want = evaluate(p, OperatingPoint(a, 1), bid, integral=integral).value
                    assert b0 + (b1 - b0) * t == want, (bid, a)


@pytest.mark.parametrize("nkd", CASES)
def test_outer_curves_above_fr_and_below_achievable(nkd):
    p = ParamSet(*nkd)
    fr = fr_normalized_curve(p)
    ach = achievable_region(p)
    for bid in outer_ids(p):
        c = normalized_outer_curve(p, bid)
        xs = {x for x, _ in c.xy + fr.xy + ach.xy}
        for x in xs:
            if x >= c.beta_range[0]:
                assert c.alpha_at(x) >= fr.alpha_at(x), (bid, x)
            if x >= max(c.beta_range[0], ach.beta_range[0]):
                assert c.alpha_at(x) <= ach.alpha_at(x), (bid, x)


def test_structural_points_635():
    assert structural_points(ParamSet(6, 3, 5)) == [3, F(13, 4), 4, 5]


def test_closure_fills_a_bump():
    # a zigzag segment set: the boundary ignores the part that rises
    segs = [((F(1), F(5)), (F(2), F(4))), ((F(2), F(6)), (F(3), F(3)))]
    c = upward_closure_boundary(segs)
    # the second segment y = 6 - 3(x - 2) drops to 4 at x = 8/3
    assert c.xy == [(1, 5), (2, 4), (F(8, 3), 4), (3, 3)]
