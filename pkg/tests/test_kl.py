import json

import pytest

from jcrystal import kl
from jcrystal.hecke import hecke_algebra
from jcrystal.kl import (KLTable, check_kl_table, dual_kl_basis, expand_in_basis, form, form_direct,
                         kl_basis, left_cells, parabolic_bases)
from jcrystal.ring import ONE, P, Q


def _letter_counts(W, w):
    word = W.word(w)
    return word.count(0), len(word) - word.count(0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_c_longest_closed_form(d):
    # oracle: C_{w0} = sum_y p^{a(w0)-a(y)} q^{b(w0)-b(y)} H_y, counting s0 and other letters
    H = hecke_algebra(d)
    W = H.W
    a0, b0 = _letter_counts(W, W.longest())
    want = H.elt({y: P ** (a0 - _letter_counts(W, y)[0]) * Q ** (b0 - _letter_counts(W, y)[1])
                  for y in range(len(W))})
    assert kl_basis(d).elt(W.longest()) == want


def test_c_simple():
    H = hecke_algebra(2)
    C = kl_basis(2)
    assert C.elt(1) == H.gen(0) + P * H.one()
    assert C.elt(2) == H.gen(1) + Q * H.one()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_tables_pass_checks(d):
    assert check_kl_table(kl_basis(d)) == []
    assert check_kl_table(dual_kl_basis(d)) == []


def test_expand_round_trip():
    H = hecke_algebra(2)
    C = kl_basis(2)
    h = H.gen(0) * H.gen(1) + Q * H.one()
    coords = expand_in_basis(h, C)
    assert sum((C.elt(w) * c for w, c in coords.items()), H.zero()) == h


def test_form_routes_agree():
    H = hecke_algebra(2)
    C, D = kl_basis(2), dual_kl_basis(2)
    for y in range(8):
        for w in range(8):
            assert form(H, C.elt(y), D.elt(w)) == form_direct(H, C.elt(y), D.elt(w))


def test_cell_sizes_frozen():
    # oracle: in the asymptotic regime the left cells for a bipartition of d
    # number dim(chi) and have size dim(chi); dims from the hook formula
    assert left_cells(2).sizes() == [1, 1, 1, 1, 2, 2]
    assert left_cells(3).sizes() == [1] * 4 + [2] * 4 + [3] * 12


def test_parabolic_bases_all_j():
    H = hecke_algebra(2)
    for J in ((), (0,), (1,), (0, 1)):
        bases = parabolic_bases(2, frozenset(J))
        assert sorted(bases) == sorted(H.W.min_coset_reps(frozenset(J)))


def test_json_and_csv(tmp_path):
    t = kl_basis(2)
    data = json.loads(t.dumps())
    assert len(data["columns"]) == 8 and data["code"] == kl.code_version()
    back = KLTable.from_json(data)
    assert all(back.elt(w) == t.elt(w) for w in range(8))
    assert t.to_csv().splitlines()[0] == "w,y,coefficient"


def test_cache_round_trip(tmp_path):
    cold = kl.kl_basis(2, cache_dir=str(tmp_path))
    assert (tmp_path / "B2-C.json").exists()
    kl._load_or_build.cache_clear()
    warm = kl.kl_basis(2, cache_dir=str(tmp_path))
    assert warm.dumps() == cold.dumps()


def test_cache_invalidated_by_code_version(tmp_path):
    path = tmp_path / "B1-C.json"
    kl.kl_basis(1, cache_dir=str(tmp_path))
    data = json.loads(path.read_text())
    data["code"] = "stale"
    data["columns"] = {}
    path.write_text(json.dumps(data))
    kl._load_or_build.cache_clear()
    t = kl.kl_basis(1, cache_dir=str(tmp_path))
    assert len(t) == 2
    assert json.loads(path.read_text())["code"] == kl.code_version()
