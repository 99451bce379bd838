from itertools import permutations, product

from hypothesis import given, strategies as st

from jcrystal.weyl_b import SignedPerm, length_formula, weyl_group


def _all_signed(d):
    for perm in permutations(range(1, d + 1)):
        for sg in product((1, -1), repeat=d):
            yield SignedPerm(tuple(s * x for s, x in zip(sg, perm)))


def test_orders_and_longest():
    for d, order in ((1, 2), (2, 8), (3, 48)):
        W = weyl_group(d)
        assert len(W) == order
        assert W.length(W.longest()) == d * d
        assert sorted(W.elt(w) for w in range(len(W))) == sorted(_all_signed(d))


def test_length_formula_matches_reduced_words():
    W = weyl_group(3)
    for w in range(len(W)):
        assert length_formula(W.elt(w)) == len(W.word(w)) == W.length(w)


idx3 = st.integers(0, 47)


@given(idx3, idx3, idx3)
def test_group_axioms(a, b, c):
    W = weyl_group(3)
    assert W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c))
    assert W.mul(a, W.inverse(a)) == W.idx(SignedPerm.identity(3))


@given(idx3, idx3)
def test_bruhat_respects_length(y, w):
    W = weyl_group(3)
    if W.bruhat_leq(y, w) and y != w:
        assert W.length(y) < W.length(w)
    assert W.bruhat_leq(W.idx(SignedPerm.identity(3)), w)


def test_min_coset_reps():
    W = weyl_group(3)
    for J in ((), (0,), (1, 2), (0, 1, 2)):
        reps = W.min_coset_reps(J)
        assert len(reps) * len(W.parabolic(J)) == 48
        assert all(W.is_min_rep(J, w) for w in reps)
