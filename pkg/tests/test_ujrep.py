import pytest
from hypothesis import given, strategies as st

from jcrystal.ring import ONE, P, Q
from jcrystal.ujrep import (TensorSpace, apply_automorphism, check_commutation, check_divided_power_identity,
                            check_relations, check_surjection_formulas, gen)


def test_single_factor_action():
    V = TensorSpace(1, 1)
    v = V.basis_vector
    # f_1 v_0 = v_-1 + p v_1; k_1 = K_{1/2} K_{-1/2}^-1 has exponents (-1, 2, -1)
    assert dict(V.uj("f", 1, v((0,))).items()) == {(-1,): ONE, (1,): P}
    assert dict(V.uj("k", 1, v((1,))).items()) == {(1,): Q ** -1}
    assert dict(V.uj("k", 1, v((-1,))).items()) == {(-1,): Q ** -1}
    assert dict(V.uj("k", 1, v((0,))).items()) == {(0,): Q ** 2}


@pytest.mark.parametrize("r,d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_bimodule(r, d):
    assert check_relations(r, d) == []
    assert check_commutation(r, d) == []
    assert check_surjection_formulas(r, d) == []


@pytest.mark.parametrize("r,d", [(1, 2), (2, 2)])
def test_divided_powers(r, d):
    assert check_divided_power_identity(r, d, 3) == []


letters = st.sampled_from([gen("e", 1), gen("f", 1), gen("k", 1), gen("k", 1, -1),
                           gen("e", 2), gen("f", 2), gen("k", 2)])
words = st.lists(letters, min_size=1, max_size=3).map(lambda xs: xs[0] * xs[1] * xs[2] if len(xs) == 3
                                                      else (xs[0] * xs[1] if len(xs) == 2 else xs[0]))


@given(words, words)
def test_psi_is_an_involutive_automorphism(x, y):
    assert apply_automorphism("psij", apply_automorphism("psij", x)) == x
    assert apply_automorphism("psij", x * y) == apply_automorphism("psij", x) * apply_automorphism("psij", y)


@given(words, words)
def test_sigma_is_an_anti_automorphism(x, y):
    s = lambda z: apply_automorphism("sigmaj", z)
    assert s(x * y) == s(y) * s(x)
