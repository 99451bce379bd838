from hypothesis import given, strategies as st

from jcrystal.hecke import hecke_algebra
from jcrystal.ring import ONE, P, Q

H2 = hecke_algebra(2)
coef = st.sampled_from([ONE, P, Q ** -1, P * Q - 2, -ONE])
elts = st.dictionaries(st.integers(0, 7), coef, max_size=3).map(H2.elt)


def test_quadratic_relations():
    # (H_s - p^-1)(H_s + p) = 0 and likewise for q
    Hs0, Hs1 = H2.gen(0), H2.gen(1)
    assert (Hs0 - P ** -1 * H2.one()) * (Hs0 + P * H2.one()) == H2.zero()
    assert (Hs1 - Q ** -1 * H2.one()) * (Hs1 + Q * H2.one()) == H2.zero()


def test_braid_relation_b2():
    a, b = H2.gen(0), H2.gen(1)
    assert a * b * a * b == b * a * b * a


@given(elts, elts, elts)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elts, elts)
def test_bar_is_an_involutive_ring_map(a, b):
    assert H2.bar(H2.bar(a)) == a
    assert H2.bar(a * b) == H2.bar(a) * H2.bar(b)


@given(elts, elts)
def test_flat_is_an_anti_involution(a, b):
    assert H2.flat(H2.flat(a)) == a
    assert H2.flat(a * b) == H2.flat(b) * H2.flat(a)


@given(elts, elts)
def test_sgn_is_a_ring_map(a, b):
    assert H2.sgn(a * b) == H2.sgn(a) * H2.sgn(b)


def test_bar_of_generator():
    # bar(H_s) = H_s^-1 = H_s + (p - p^-1)
    assert H2.bar(H2.gen(0)) == H2.gen(0) + (P - P ** -1) * H2.one()


def test_x_j_square():
    for J in ((0,), (1,), (0, 1)):
        x = H2.x_J(frozenset(J))
        assert x * x == H2.scalar(H2.P_J(frozenset(J))) * x
