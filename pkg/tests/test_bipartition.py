from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from jcrystal.bipartition import (Bipartition, dominance_leq, enumerate_bipartitions, enumerate_sst,
                                  gamma, sst_wtj, wtj)


def _hook_content(shape, n):
    """Number of SSYT of the shape with entries from n letters."""
    shape = [x for x in shape if x]
    conj = [sum(1 for x in shape if x > j) for j in range(shape[0])] if shape else []
    out = Fraction(1)
    for i, row in enumerate(shape):
        for j in range(row):
            hook = row - j + conj[j] - i - 1
            out *= Fraction(n + j - i, hook)
    return out


def _syt(shape):
    shape = [x for x in shape if x]
    conj = [sum(1 for x in shape if x > j) for j in range(shape[0])] if shape else []
    h = 1
    for i, row in enumerate(shape):
        for j in range(row):
            h *= row - j + conj[j] - i - 1
    return factorial(sum(shape)) // h


@pytest.mark.parametrize("r,d", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
def test_sst_counts_match_hook_content(r, d):
    for lam in enumerate_bipartitions(r, d):
        T = enumerate_sst(lam)
        assert all(t.is_semistandard() for t in T)
        assert len(set(map(str, T))) == len(T)
        assert len(T) == _hook_content(lam.minus, r + 1) * _hook_content(lam.plus, r)


@pytest.mark.parametrize("r,d", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_schur_weyl_dimension_count(r, d):
    # sum over bipartitions of #SST * dim of the hyperoctahedral irreducible
    total = 0
    for lam in enumerate_bipartitions(r, d):
        a, b = sum(lam.minus), sum(lam.plus)
        total += len(enumerate_sst(lam)) * comb(d, a) * _syt(lam.minus) * _syt(lam.plus)
    assert total == (2 * r + 1) ** d


def test_sst_weights_contain_highest_weight():
    for lam in enumerate_bipartitions(1, 3):
        ws = [sst_wtj(t) for t in enumerate_sst(lam)]
        assert ws.count(wtj(lam)) == 1


def test_gamma_frozen():
    assert gamma(2) == ((3, -1), (-1, 2))
    assert wtj(Bipartition((2, 0), (0,))).coords == (4,)


bips = st.sampled_from(enumerate_bipartitions(1, 3) + enumerate_bipartitions(2, 2))


@given(bips)
def test_parse_round_trip(lam):
    assert Bipartition.parse(str(lam)) == lam


@given(bips, bips, bips)
def test_dominance_is_a_partial_order(a, b, c):
    assert dominance_leq(a, a)
    if a.r == b.r == c.r:
        if dominance_leq(a, b) and dominance_leq(b, a):
            assert a == b
        if dominance_leq(a, b) and dominance_leq(b, c):
            assert dominance_leq(a, c)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Bipartition.parse("((2,0),(0))")
