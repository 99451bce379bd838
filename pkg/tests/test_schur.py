import pytest

from jcrystal.ring import ONE
from jcrystal.schur import SElt, schur_algebra


@pytest.mark.parametrize("r,d,dim", [(1, 1, 5), (1, 2, 15), (1, 3, 35), (2, 2, 91)])
def test_dimension_frozen(r, d, dim):
    # oracle: brute-force count of signed-permutation orbits on pairs of words
    assert len(schur_algebra(r, d).basis) == dim


def test_flat_is_an_anti_involution():
    S = schur_algebra(1, 2)
    for (a, b), prod in S.structure_constants().items():
        x, y = SElt(S, {a: ONE}), SElt(S, {b: ONE})
        assert S.flat(S.flat(x)) == x
        assert S.flat(prod) == S.compose(S.flat(y), S.flat(x))


def test_bar_is_an_involution():
    S = schur_algebra(1, 2)
    for key in S.basis:
        x = SElt(S, {key: ONE})
        assert S.bar(S.bar(x)) == x


def test_unit():
    S = schur_algebra(1, 2)
    for key in S.basis:
        x = SElt(S, {key: ONE})
        assert S.compose(S.one(), x) == x == S.compose(x, S.one())


def test_structure_constants_deterministic():
    S = schur_algebra(1, 1)
    assert S.dumps_structure_constants() == S.dumps_structure_constants()
