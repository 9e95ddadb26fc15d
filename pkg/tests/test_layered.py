from __future__ import annotations

from fractions import Fraction as F
from math import comb

import pytest

from erbounds.bounds import linear_bound_k_eq_d, rank_dual_bound
from erbounds.core import DomainError, OperatingPoint, ParamSet
from erbounds.linalg import construct_layered_code, gf_rank, verify_layered_code
from oracles import layered_normalized


def test_layered_5_2():
    c = construct_layered_code(5, 2)
    assert (c.alpha, c.beta, c.file_size) == (4, 1, 10)
    rep = verify_layered_code(c)
    assert rep.ok and rep.details["max_symbols_per_helper"] == 1


def test_layered_5_3():
    c = construct_layered_code(5, 3)
    assert (c.alpha, c.beta, c.file_size) == (6, 3, 20)
    assert gf_rank(c.parity) == 10 == -(-10 * (6 - 3) // 3)
    assert linear_bound_k_eq_d(ParamSet(5, 4, 4), OperatingPoint(6, 3)).value == 20
    rep = verify_layered_code(c)
    assert rep.ok and len(rep.checks) == 5 and rep.details["rank_h"] == 10


def test_layered_6_5():
    c = construct_layered_code(6, 5)
    assert c.file_size == 24
    assert verify_layered_code(c).ok
    assert layered_normalized(6, 5) == (F(c.alpha, c.file_size), F(c.beta, c.file_size)) == (F(5, 24), F(1, 6))


@pytest.mark.parametrize("n", range(4, 9))
def test_layered_family(n):
    for r in range(2, n):
        c = construct_layered_code(n, r)
        assert gf_rank(c.parity) == n * c.alpha - c.file_size == comb(n, r)
        bound = rank_dual_bound(ParamSet(n, n - 1, n - 1), OperatingPoint(c.alpha, c.beta))
        assert gf_rank(c.parity) == bound
        assert verify_layered_code(c).ok


def test_layered_domain():
    with pytest.raises(DomainError):
        construct_layered_code(3, 2)
    with pytest.raises(DomainError):
        construct_layered_code(5, 5)
    with pytest.raises(DomainError):
        construct_layered_code(5, 1)


def test_layered_detects_tampering():
    import dataclasses

    import numpy as np

    from erbounds.linalg.gf import GFMatrix

    c = construct_layered_code(5, 3)
    g = c.generator.data.copy()
    g[0] = (g[0] + 1) % 2
    bad = dataclasses.replace(c, generator=GFMatrix(2, g))
    rep = verify_layered_code(bad)
    assert not rep.ok
    assert not np.array_equal(bad.generator.data, c.generator.data)
