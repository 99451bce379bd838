import json
from math import comb, factorial

import pytest

from jcrystal.bipartition import Bipartition, enumerate_bipartitions, enumerate_sst
from jcrystal.globalcrystal import (build_irreducible, check_etil_plus, check_lattice, check_modified_kashiwara,
                                    check_psij, check_structure_constants, check_theorem, crystal_graph_dot,
                                    crystal_operators, etil_plus, filtration_check, form1, form1_declared, form2,
                                    irrep_json, string_basis)
from jcrystal.linalg import entries, eye
from jcrystal.suites import irreducible_scope

SCOPE = irreducible_scope()


def _same(A, B):
    return entries(A.to_dense()) == entries(B.to_dense())


def _syt(shape):
    shape = [x for x in shape if x]
    conj = [sum(1 for x in shape if x > j) for j in range(shape[0])] if shape else []
    h = 1
    for i, row in enumerate(shape):
        for j in range(row):
            h *= row - j + conj[j] - i - 1
    return factorial(sum(shape)) // h


def _hecke_dim(lam):
    return comb(lam.size, sum(lam.minus)) * _syt(lam.minus) * _syt(lam.plus)


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_irreducible_dimension_and_relations(lam):
    G = build_irreducible(lam)
    assert G.module.dim == len(enumerate_sst(lam))
    assert G.module.check() == []


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_theorem_items(lam):
    G = build_irreducible(lam)
    report = check_theorem(G)
    assert {k: v for k, v in report.items() if v} == {}


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_form1_routes_agree(lam):
    G = build_irreducible(lam)
    assert _same(form1(G), form1_declared(G))


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_forms_are_contravariant(lam):
    G = build_irreducible(lam)
    M = G.module
    g1 = form1(G)
    for i in range(1, M.r + 1):
        E, F = M.gen_matrix("e", i, 1), M.gen_matrix("f", i, 1)
        assert _same(E.transpose() * g1, g1 * F)
    assert _same(form2(G).transpose(), form2(G))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_string_module_closed_form(k):
    G = build_irreducible(Bipartition((k, 0), (0,)))
    assert _same(string_basis(G), eye(G.module.dim))


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_crystal_operators_are_inverse(lam):
    G = build_irreducible(lam)
    cr = crystal_operators(G.module)
    for i in range(1, lam.r + 1):
        for b, c in cr.ftil[i].items():
            if c is not None:
                assert cr.etil[i][c] == b
                assert cr.eps[i][c] == cr.eps[i][b] + 1
                assert cr.phi[i][c] == cr.phi[i][b] - 1
    assert check_structure_constants(G.module) == []


@pytest.mark.parametrize("lam", SCOPE, ids=str)
def test_modified_kashiwara_nonnegative(lam):
    assert check_modified_kashiwara(build_irreducible(lam), range(0, 4)) == []


def test_modified_kashiwara_negative_n_frozen():
    # the displayed A_n formula vanishes for even negative n; record the failures
    G = build_irreducible(Bipartition((2, 0), (0,)))
    assert len(check_modified_kashiwara(G, [-2, -1])) == 2


@pytest.mark.parametrize("lam", [l for l in SCOPE if l.r == 2], ids=str)
def test_etil_plus(lam):
    G = build_irreducible(lam)
    assert check_etil_plus(G) == []
    plus = etil_plus(G)
    for b, c in plus.ftil.items():
        assert plus.etil[c] == b


@pytest.mark.parametrize("d", [2, 3])
def test_filtration_multiplicities(d):
    # oracle: multiplicity of L(lambda) in V^{(x)d} is the Hecke irreducible dimension
    rep = filtration_check(1, d)
    assert rep.ok(), rep.lines()
    assert rep.multiplicities == {lam: _hecke_dim(lam) for lam in enumerate_bipartitions(1, d)}


def test_not_a_constituent():
    with pytest.raises(ValueError):
        build_irreducible(Bipartition((0, 0), (0,)))


def test_lattice_and_psi_direct():
    G = build_irreducible(Bipartition((1, 0), (1,)))
    assert check_lattice(G) == []
    assert check_psij(G) == []


def test_outputs_deterministic():
    lam = Bipartition((2, 0), (0,))
    s = irrep_json(lam)
    assert s == irrep_json(lam)
    data = json.loads(s)
    assert data["dim"] == 3 and len(data["low_basis"]) == 3
    dot = crystal_graph_dot(lam)
    assert dot.count("[label=\"f1\"]") == 2
    assert sum(1 for line in dot.splitlines() if line.strip().startswith("n") and "->" not in line) == 3
