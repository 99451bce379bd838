"""Irreducible U^j-modules from left cells and their global j-crystal bases.

An irreducible L(lambda) is realized as the cell module C^L_X(pi) of a left
cell X of W_d, the cell being identified by its character.  In cell
coordinates the lower global basis is the standard basis; the upper global
basis comes from the D-cell module of X w0 through the isomorphism sending
highest weight vector to highest weight vector.

>>> G = build_irreducible(Bipartition.parse("((2,0);(0))"))
>>> G.module.dim, [str(w) for w in G.module.weights]
(3, ['(4)', '(1)', '(-2)'])
>>> cr = crystal_operators(G.module)
>>> [cr.ftil[1][b] for b in range(3)]
[1, 2, None]
"""

from __future__ import annotations

import json
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from sympy.polys.matrices import DomainMatrix

from .bipartition import (Bipartition, WeightJ, composition_wtj, dominance_leq, e_r_set,
                          enumerate_bipartitions, enumerate_sst, gamma, sst_wtj, wtj)
from .kl import left_cells
from .linalg import (K, P_K, Q_K, a0_echelon, bar_K, bar_matrix, diag, entries, eye, from_K,
                     from_dict, in_A0, in_qA0, inverse, is_laurent_K, nullspace, origin_value,
                     q_int_K, rank, reduce_mod_q, to_K, valuation_K, zeros)
from .ring import Q
from .schur import CellModuleS, schur_algebra
from .ujrep import UjExpr, apply_automorphism, gen, relations, tensor_space

__all__ = [
    "UjModuleDatum",
    "GlobalBasisDatum",
    "cell_uj_module",
    "tensor_uj_module",
    "check_tensor_module",
    "irreducible_cells",
    "build_irreducible",
    "psij_involution",
    "check_psij",
    "form1",
    "form1_declared",
    "form1_pairing",
    "form2",
    "lattice_from_form2",
    "check_lattice",
    "check_balanced",
    "check_theorem",
    "string_basis",
    "modified_kashiwara",
    "check_modified_kashiwara",
    "crystal_operators",
    "check_structure_constants",
    "etil_plus",
    "check_etil_plus",
    "filtration_check",
    "irrep_json",
    "crystal_graph_dot",
]


# ---------------------------------------------------------------------------
# small vector helpers over K

def _fmt(x):
    return from_K(x).pretty()


def _mv(M, v):
    E = entries(M)
    return [sum((a * b for a, b in zip(row, v) if a and b), K.zero) for row in E]


def _unit(n, j):
    v = [K.zero] * n
    v[j] = K.one
    return v


def _columns(vectors, n):
    """Matrix whose columns are the given vectors."""
    m = len(vectors)
    return DomainMatrix([[vectors[j][i] for j in range(m)] for i in range(n)], (n, m), K)


def _vstack(mats):
    rows = []
    for M in mats:
        rows.extend(list(r) for r in entries(M))
    return DomainMatrix(rows, (len(rows), mats[0].shape[1]), K)


def _same(A, B):
    return (A.to_dense() - B.to_dense()).is_zero_matrix


def _span_rank(vectors, n):
    vectors = [v for v in vectors if any(v)]
    return rank(_columns(vectors, n)) if vectors else 0


def _factorial_K(n):
    out = K.one
    for k in range(1, n + 1):
        out *= q_int_K(k)
    return out


def _coeff_in_1_qA0(c):
    return in_qA0(c - K.one)


def _is_integral_laurent(c):
    if not is_laurent_K(c):
        return False
    num, den = c.numer, c.denom
    lead = list(den.values())[0]
    return all((v / lead).denominator == 1 for v in num.values())


# ---------------------------------------------------------------------------
# modules

class UjModuleDatum:
    """A finite-dimensional U^j-module given by generator matrices over Q(p, q).

    ``e[i]``, ``f[i]`` are DomainMatrix objects; k_i acts diagonally by
    q^kexp[i][j] on the j-th basis vector.
    """

    def __init__(self, r, labels, e, f, kexp, provenance, weights=None):
        self.r = r
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.e = dict(e)
        self.f = dict(f)
        self.kexp = {i: tuple(v) for i, v in kexp.items()}
        self.weights = weights or [WeightJ(tuple(self.kexp[i][j] for i in range(1, r + 1)))
                                   for j in range(self.dim)]
        self.provenance = provenance
        self._cache = {}

    def k(self, i, power=1):
        return diag([Q_K ** (power * c) for c in self.kexp[i]])

    def gen_matrix(self, name, i, n=1):
        """e_i^{(n)}, f_i^{(n)} or k_i^n."""
        key = (name, i, n)
        if key in self._cache:
            return self._cache[key]
        if name == "k":
            out = self.k(i, n)
        elif n < 0:
            raise ValueError("negative divided power")
        elif n == 0:
            out = eye(self.dim)
        else:
            base = self.e[i] if name == "e" else self.f[i]
            out = base.pow(n)
            if n > 1:
                out = out.mul(1 / _factorial_K(n))
        self._cache[key] = out
        return out

    def expr_matrix(self, x: UjExpr):
        total = zeros(self.dim, self.dim)
        for word, c in x.terms.items():
            acc = eye(self.dim)
            for name, i, n in word:
                acc = acc * self.gen_matrix(name, i, n)
            total = total + acc.mul(to_K(c))
        return total

    def weight_blocks(self):
        out = {}
        for j, w in enumerate(self.weights):
            out.setdefault(w, []).append(j)
        return out

    def check(self):
        """Failures of the defining relations and of the weight bookkeeping."""
        bad = []
        for i in range(1, self.r + 1):
            if any(self.kexp[i][j] != self.weights[j].coords[i - 1] for j in range(self.dim)):
                bad.append(("weight", i))
        for name, rel in relations(self.r):
            if not self.expr_matrix(rel).is_zero_matrix:
                bad.append(("relation", name))
        return bad

    def to_json(self):
        gens = {}
        for i in range(1, self.r + 1):
            gens[f"e{i}"] = _matrix_json(self.e[i])
            gens[f"f{i}"] = _matrix_json(self.f[i])
            gens[f"k{i}"] = _matrix_json(self.k(i))
            gens[f"k{i}^-1"] = _matrix_json(self.k(i, -1))
        return {
            "dim": self.dim,
            "labels": [str(b) for b in self.labels],
            "weights": [list(w.coords) for w in self.weights],
            "provenance": self.provenance,
            "generators": gens,
        }


def _matrix_json(M):
    return [[_fmt(x) for x in row] for row in entries(M)]


def _label_str(S, label):
    lam, w = label
    return "(" + ",".join(map(str, lam)) + ")|" + S.W.format(w)


def cell_uj_module(r, d, X, kind="C"):
    """C^L_X(pi^j) (kind C) or D^L_X(pi^j) with the U^j-action through xi."""
    S = schur_algebra(r, d)
    cm = CellModuleS(S, X, kind)
    n = len(cm)
    e = {i: from_dict(n, n, cm.matrix(S.xi_e(i))) for i in range(1, r + 1)}
    f = {i: from_dict(n, n, cm.matrix(S.xi_f(i))) for i in range(1, r + 1)}
    kexp = {i: [S.k_exponent(i, lam) for lam, _ in cm.labels] for i in range(1, r + 1)}
    weights = [composition_wtj(lam) for lam, _ in cm.labels]
    labels = [_label_str(S, b) for b in cm.labels]
    mod = UjModuleDatum(r, labels, e, f, kexp, f"{kind}-cell {S.W.format(X[0])}..",
                        weights=weights)
    mod.cell = cm
    return mod


def tensor_uj_module(r, d):
    """V^{tensor d} = T(pi^j) in the parabolic KL basis {^lambda C_w}."""
    S = schur_algebra(r, d)
    labels = S.tkl_labels()
    pos = {b: j for j, b in enumerate(labels)}
    n = len(labels)

    def matrix(s):
        m = {}
        for j, (lam, w) in enumerate(labels):
            for lab, c in S.expand_tkl(S.act(s, S.tkl_C(lam, w)), "C").items():
                m[(pos[lab], j)] = c
        return from_dict(n, n, m)

    e = {i: matrix(S.xi_e(i)) for i in range(1, r + 1)}
    f = {i: matrix(S.xi_f(i)) for i in range(1, r + 1)}
    kexp = {i: [S.k_exponent(i, lam) for lam, _ in labels] for i in range(1, r + 1)}
    weights = [composition_wtj(lam) for lam, _ in labels]
    mod = UjModuleDatum(r, [_label_str(S, b) for b in labels], e, f, kexp,
                        f"tensor space r={r} d={d}", weights=weights)
    mod.tkl = labels
    return mod


def check_tensor_module(mod, r, d):
    """Cross-check the KL-basis matrices against the action on V^d itself."""
    V = tensor_space(r, d)
    S = V.schur()
    pos = {b: j for j, b in enumerate(mod.tkl)}
    bad = []
    for i in range(1, r + 1):
        for name in ("e", "f"):
            M = entries(mod.gen_matrix(name, i))
            for j, (lam, w) in enumerate(mod.tkl):
                v = V.iso_T_inverse(S.tkl_C(lam, w))
                img = S.expand_tkl(V.iso_T(V.uj(name, i, v)), "C")
                col = [K.zero] * mod.dim
                for lab, c in img.items():
                    col[pos[lab]] = to_K(c)
                if col != [M[k][j] for k in range(mod.dim)]:
                    bad.append((name, i, mod.labels[j]))
    return bad


# ---------------------------------------------------------------------------
# identification of cells

def _character(weights):
    return Counter(weights)


@lru_cache(maxsize=None)
def irreducible_cells(r, d):
    """{lambda: [X, ...]} over the left cells X of W_d with nonzero C-cell module."""
    cd = left_cells(d)
    chars = {}
    for lam in enumerate_bipartitions(r, d):
        chars[lam] = _character(sst_wtj(T) for T in enumerate_sst(lam))
    S = schur_algebra(r, d)
    out = {}
    for X in cd.cells:
        cm = CellModuleS(S, X, "C")
        if not len(cm):
            continue
        ch = _character(composition_wtj(lam) for lam, _ in cm.labels)
        hits = [lam for lam, c in chars.items() if c == ch]
        if len(hits) != 1:
            raise AssertionError(f"cell {X} matches {len(hits)} characters")
        out.setdefault(hits[0], []).append(tuple(X))
    return {lam: sorted(v) for lam, v in out.items()}


def _hw_index(mod, weight):
    """Index of the unique basis vector spanning the joint kernel of all e_i."""
    E = _vstack([mod.e[i] for i in range(1, mod.r + 1)])
    ker = nullspace(E)
    if len(ker) != 1:
        raise AssertionError(f"{len(ker)} highest weight vectors")
    v = ker[0]
    supp = [j for j, x in enumerate(v) if x]
    if len(supp) != 1:
        raise AssertionError("highest weight vector is not a cell basis vector")
    j = supp[0]
    if mod.weights[j] != weight:
        raise AssertionError("highest weight vector has the wrong weight")
    return j


def _spanning_words(mod, hw):
    """Words w_k (tuples of (name, i)) with w_k v_hw a basis of the module."""
    gens = [(name, i) for i in range(1, mod.r + 1) for name in ("f", "e")]
    start = _unit(mod.dim, hw)
    words, vecs = [()], [start]
    frontier = [((), start)]
    while frontier and len(vecs) < mod.dim:
        nxt = []
        for word, v in frontier:
            for name, i in gens:
                u = _mv(mod.e[i] if name == "e" else mod.f[i], v)
                if not any(u):
                    continue
                if _span_rank(vecs + [u], mod.dim) > len(vecs):
                    words.append(((name, i),) + word)
                    vecs.append(u)
                    nxt.append((((name, i),) + word, u))
        frontier = nxt
    if len(vecs) != mod.dim:
        raise AssertionError("module is not generated by its highest weight vector")
    return words, vecs


def _word_matrix(mod, word):
    acc = eye(mod.dim)
    for name, i in word:
        acc = acc * (mod.e[i] if name == "e" else mod.f[i])
    return acc


def _intertwiner(A, B, hwA, hwB):
    """The U^j-isomorphism A -> B sending basis vector hwA to basis vector hwB."""
    if A.dim != B.dim:
        raise AssertionError("dimension mismatch")
    words, vecsA = _spanning_words(A, hwA)
    vecsB = [_mv(_word_matrix(B, w), _unit(B.dim, hwB)) for w in words]
    T = _columns(vecsB, B.dim) * inverse(_columns(vecsA, A.dim))
    for i in range(1, A.r + 1):
        for name in ("e", "f"):
            MA = A.e[i] if name == "e" else A.f[i]
            MB = B.e[i] if name == "e" else B.f[i]
            if not _same(T * MA, MB * T):
                raise AssertionError(f"transport does not intertwine {name}{i}")
        if A.kexp[i] != B.kexp[i] and not _same(T * A.k(i), B.k(i) * T):
            raise AssertionError(f"transport does not intertwine k{i}")
    return T


class GlobalBasisDatum:
    """L(lambda) in C-cell coordinates with its lower and upper global bases.

    ``low`` is the identity (G^low(b) is the b-th cell basis vector) and the
    columns of ``up`` are the G^up(b) in the same coordinates.
    """

    def __init__(self, lam, X, module, dual, T, hw, up, dual_label):
        self.lam = lam
        self.X = X
        self.module = module
        self.dual = dual
        self.T = T
        self.hw = hw
        self.low = eye(module.dim)
        self.up = up
        self.dual_label = dual_label
        self.labels = module.labels
        self.tableaux = _tableau_labels(lam, module.weights)
        self._forms = {}

    @property
    def dim(self):
        return self.module.dim


def _tableau_labels(lam, weights):
    """Bitableau per basis vector where the weight determines it, else None."""
    by_wt = {}
    for T in enumerate_sst(lam):
        by_wt.setdefault(sst_wtj(T), []).append(T)
    return [by_wt[w][0] if len(by_wt.get(w, ())) == 1 else None for w in weights]


@lru_cache(maxsize=None)
def build_irreducible(lam: Bipartition) -> GlobalBasisDatum:
    r, d = lam.r, lam.size
    if d < 1:
        raise ValueError("lambda must be nonempty")
    cells = irreducible_cells(r, d).get(lam)
    if not cells:
        raise ValueError(f"{lam} not a constituent at this d")
    X = cells[0]
    S = schur_algebra(r, d)
    W = S.W
    w0 = W.longest()
    C = cell_uj_module(r, d, X, "C")
    Xw0 = left_cells(d).times_w0(X)
    D = cell_uj_module(r, d, Xw0, "D")
    hwt = wtj(lam)
    hwC = _hw_index(C, hwt)
    hwD = _hw_index(D, hwt)
    # (mu, y) in C <-> (mu, w_mu y w0) in D
    dual_label = {}
    for a, (mu, y) in enumerate(C.cell.labels):
        dual_label[a] = D.cell.pos[(mu, W.mul(W.mul(S.wl[mu], y), w0))]
    if dual_label[hwC] != hwD:
        raise AssertionError("highest weight vectors are not matched by the label bijection")
    T = _intertwiner(C, D, hwC, hwD)
    Tinv = inverse(T)
    cols = [[row[dual_label[a]] for row in entries(Tinv)] for a in range(C.dim)]
    up = _columns(cols, C.dim)
    return GlobalBasisDatum(lam, X, C, D, T, hwC, up, dual_label)


# ---------------------------------------------------------------------------
# the psi^j-involution

def psij_involution(G: GlobalBasisDatum):
    """The anti-linear operator on L(lambda) fixing every G^low(b)."""
    def psi(vec):
        return [bar_K(to_K(x)) for x in vec]
    return psi


def check_psij(G: GlobalBasisDatum):
    """psi(x m) = psi^j(x) psi(m) on generators and on a few words; psi fixes G^up."""
    M = G.module
    bad = []
    samples = []
    for i in range(1, M.r + 1):
        samples += [gen("e", i), gen("f", i), gen("k", i), gen("k", i, -1)]
        samples.append(Q * gen("f", i) * gen("e", i))
    for x in samples:
        lhs = bar_matrix(M.expr_matrix(x))
        rhs = M.expr_matrix(apply_automorphism("psij", x))
        if not _same(lhs, rhs):
            bad.append(("intertwine", repr(x)))
    if not _same(bar_matrix(G.up), G.up):
        bad.append(("G^up not fixed", None))
    return bad


# ---------------------------------------------------------------------------
# bilinear forms

def _solve_contravariant(M, pairs, hw):
    """The unique G with A^T G = G B for all (A, B) in pairs and G[hw][hw] = 1.

    Unknowns are restricted to pairs of basis vectors of equal weight; the
    k_i-contravariance that justifies this is checked first.
    """
    n = M.dim
    for j in range(n):
        for i in range(1, M.r + 1):
            if M.kexp[i][j] != M.weights[j].coords[i - 1]:
                raise AssertionError("weights disagree with k-eigenvalues")
    unk = {}
    for a in range(n):
        for b in range(n):
            if M.weights[a] == M.weights[b]:
                unk[(a, b)] = len(unk)
    m = len(unk)
    rows = []
    for A, B in pairs:
        EA, EB = entries(A), entries(B)
        for a in range(n):
            for b in range(n):
                row = {}
                for c in range(n):
                    if EA[c][a] and (c, b) in unk:
                        row[unk[(c, b)]] = row.get(unk[(c, b)], K.zero) + EA[c][a]
                    if EB[c][b] and (a, c) in unk:
                        row[unk[(a, c)]] = row.get(unk[(a, c)], K.zero) - EB[c][b]
                row = {k: v for k, v in row.items() if v}
                if row:
                    if (a, b) not in unk and M.weights[a] == M.weights[b]:
                        raise AssertionError("internal index error")
                    rows.append(row)
    rows.append({unk[(hw, hw)]: K.one, m: K.one})
    N = len(rows)
    dense = [[K.zero] * (m + 1) for _ in range(N)]
    for k, row in enumerate(rows):
        for j, v in row.items():
            dense[k][j] = v
    aug = DomainMatrix(dense, (N, m + 1), K)
    rref, piv = aug.rref()
    if m in piv:
        raise ArithmeticError("contravariance system is inconsistent")
    if len(piv) != m:
        raise ArithmeticError("contravariance system is rank deficient")
    R = entries(rref)
    sol = [R[k][m] for k in range(m)]
    Gd = {}
    for (a, b), k in unk.items():
        if sol[k]:
            Gd[(a, b)] = sol[k]
    return from_dict(n, n, Gd)


def form1(G: GlobalBasisDatum):
    """Gram matrix of (.,.)_1 on G^low, from (x m, n)_1 = (m, sigma^j(x) n)_1."""
    if "1" not in G._forms:
        M = G.module
        pairs = []
        for i in range(1, M.r + 1):
            pairs += [(M.e[i], M.f[i]), (M.f[i], M.e[i])]
        G._forms["1"] = _solve_contravariant(M, pairs, G.hw)
    return G._forms["1"]


def form1_declared(G: GlobalBasisDatum):
    """The Gram matrix making G^low and G^up dual: the inverse of ``up``."""
    return inverse(G.up)


def form1_pairing(G: GlobalBasisDatum):
    """<[^mu C_y]_X | [^nu D_z]'_{X w0}>_pi on cell representatives, in the
    (G^low, G^up) label order; the duality statement says this is I."""
    S = schur_algebra(G.lam.r, G.lam.size)
    C, D = G.module.cell, G.dual.cell
    n = G.dim
    out = {}
    for a in range(n):
        for b in range(n):
            v = S.form_pi(C.element(C.labels[a]), D.element(D.labels[G.dual_label[b]]))
            if v:
                out[(a, b)] = v
    return from_dict(n, n, out)


def form2(G: GlobalBasisDatum):
    """Gram matrix of (.,.)_2 on G^low, from (x m, n)_2 = (m, tau^j(x) n)_2."""
    if "2" not in G._forms:
        M = G.module
        pairs = []
        for i in range(1, M.r + 1):
            dl = 1 if i == 1 else 0
            te = M.k(i, -1) * M.f[i]
            te = te.mul(P_K ** -dl * Q_K ** -1)
            tf = (M.e[i] * M.k(i)).mul(P_K ** dl * Q_K)
            pairs += [(M.e[i], te), (M.f[i], tf)]
        G._forms["2"] = _solve_contravariant(M, pairs, G.hw)
    return G._forms["2"]


# ---------------------------------------------------------------------------
# lattices

def lattice_from_form2(G: GlobalBasisDatum):
    """m in L(lambda) iff (m, m)_2 in A0; m in G^low coordinates."""
    G2 = form2(G)

    def member(vec):
        vec = [to_K(x) for x in vec]
        val = sum((a * b for a, b in zip(vec, _mv(G2, vec)) if a and b), K.zero)
        return in_A0(val)
    return member


def _sample_coefficient(rng):
    pool = [K.one, Q_K, P_K, Q_K ** -1, P_K ** -1, 1 + Q_K, 1 / (1 - Q_K), P_K / Q_K ** 3,
            Q_K ** 2 - P_K, 1 / (Q_K + Q_K ** 2), K.zero, to_K(Fraction(3, 2)), P_K ** -1 * Q_K ** 4]
    return pool[rng.randrange(len(pool))]


def check_lattice(G: GlobalBasisDatum, samples=40, seed=0):
    """Lattice from the form versus the A0-span of G^low; origin orthonormality."""
    bad = []
    n = G.dim
    G2 = form2(G)
    member = lattice_from_form2(G)
    E = entries(G2)
    for a in range(n):
        for b in range(n):
            x = E[a][b] - (K.one if a == b else K.zero)
            if not in_qA0(x):
                bad.append(("almost orthonormal", (a, b), _fmt(E[a][b])))
            expect = Fraction(int(a == b))
            if not in_A0(E[a][b]) or origin_value(E[a][b]) != expect:
                bad.append(("origin", (a, b)))
    for b in range(n):
        if not member(_unit(n, b)):
            bad.append(("G^low not in L", b))
        if member([x * P_K ** -1 for x in _unit(n, b)]):
            bad.append(("p^-1 G^low in L", b))
    rng = random.Random(seed)
    for _ in range(samples):
        vec = [_sample_coefficient(rng) for _ in range(n)]
        if member(vec) != all(in_A0(x) for x in vec):
            bad.append(("membership", [_fmt(x) for x in vec]))
    return bad


def check_balanced(G: GlobalBasisDatum, candidates=None):
    """Balanced triple (L, L_A, psi L) for the A0-, A- and bar(A0)-spans of G^low.

    Each candidate basis (columns in G^low coordinates) must lie in the
    intersection of the three lattices, and its image in L/qL must be a basis;
    the lower global basis itself must reduce to the identity.  The A-span is
    checked to be stable under all e_i^{(n)}, f_i^{(n)}, k_i^{+-1}.
    """
    M = G.module
    n = M.dim
    bad = []
    cands = [("low", G.low)] + list(candidates or [])
    for name, B in cands:
        E = entries(B)
        for a in range(n):
            for b in range(n):
                x = E[a][b]
                if x and not (in_A0(x) and in_A0(bar_K(x)) and _is_integral_laurent(x)):
                    bad.append(("not in intersection", name, (a, b)))
        red = [[origin_value(E[a][b]) for b in range(n)] for a in range(n)]
        if rank(DomainMatrix([[K.convert(int(x)) if x.denominator == 1 else to_K(x) for x in row]
                              for row in red], (n, n), K)) != n:
            bad.append(("reduction not a basis", name))
        if name == "low" and any(red[a][b] != int(a == b) for a in range(n) for b in range(n)):
            bad.append(("low basis does not reduce to itself", name))
    for i in range(1, M.r + 1):
        for nn in range(1, n + 1):
            for g in ("e", "f"):
                for x in (y for row in entries(M.gen_matrix(g, i, nn)) for y in row):
                    if x and not _is_integral_laurent(x):
                        bad.append(("A-span not stable", g, i, nn))
                        break
    return bad


def check_theorem(G: GlobalBasisDatum, seed=0):
    """Every property the global bases must have; {item: failures}."""
    out = {"psi": check_psij(G)}
    dual = []
    F1 = form1(G)
    if not _same(F1, form1_declared(G)):
        dual.append("contravariant solve differs from declared duality")
    if not _same(F1 * G.up, eye(G.dim)):
        dual.append("mixed Gram is not the identity")
    if not _same(form1_pairing(G), eye(G.dim)):
        dual.append("cell pairing is not the identity")
    out["duality"] = dual
    out["lattice"] = check_lattice(G, seed=seed)
    out["balanced"] = check_balanced(G, [("strings", string_basis(G))] if G.module.r == 1 else None)
    out["relations"] = G.module.check()
    return out


def string_basis(G: GlobalBasisDatum):
    """Columns f_1^{(n)} v (r = 1), v the highest weight vector, in G^low coordinates."""
    M = G.module
    u = _unit(M.dim, G.hw)
    cols = [_mv(M.gen_matrix("f", 1, n), u) for n in range(M.dim)]
    if _span_rank(cols, M.dim) != M.dim:
        raise AssertionError("f_1-string of the highest weight vector is not a basis")
    order = sorted(range(M.dim), key=lambda b: -M.weights[b].coords[0])
    return _columns([cols[order.index(b)] for b in range(M.dim)], M.dim)


# ---------------------------------------------------------------------------
# crystal operators

class CrystalData:
    """f~_i, e~_i, eps_i, phi_i on basis indices, and the lattice string bases."""

    def __init__(self, r, dim):
        self.r = r
        self.dim = dim
        self.ftil = {}
        self.etil = {}
        self.eps = {}
        self.phi = {}
        self.strings = {}

    def string_data(self, i, b):
        return self.eps[i][b], self.phi[i][b]


def _hw_lattice_basis(M, i, idx):
    """Vectors u_b in ker e_i of weight block idx, in A0^n, with u_b = b mod qL."""
    n = M.dim
    E = entries(M.e[i])
    sub = DomainMatrix([[E[a][j] for j in idx] for a in range(n)], (n, len(idx)), K)
    ker = []
    for v in nullspace(sub):
        full = [K.zero] * n
        for j, x in zip(idx, v):
            full[j] = x
        ker.append(full)
    ech = [v for _, v in a0_echelon(ker)]
    if not ech:
        return []
    red = [list(reduce_mod_q(v)) for v in ech]
    R = DomainMatrix([[to_K(x) for x in row] for row in red], (len(red), n), K)
    # rational change of basis making the reductions a row echelon of unit vectors
    aug = DomainMatrix([list(entries(R)[k]) + [K.one if k == t else K.zero for t in range(len(red))]
                        for k in range(len(red))], (len(red), n + len(red)), K)
    rr, piv = aug.rref()
    if any(p >= n for p in piv[:len(red)]):
        raise AssertionError("kernel reductions are dependent")
    RR = entries(rr)
    out = []
    for k in range(len(red)):
        row = RR[k][:n]
        supp = [j for j, x in enumerate(row) if x]
        if len(supp) != 1 or row[supp[0]] != K.one:
            raise AssertionError("kernel of e_i mod qL is not spanned by crystal elements")
        coeffs = RR[k][n:]
        u = [K.zero] * n
        for c, v in zip(coeffs, ech):
            if c:
                u = [x + c * y for x, y in zip(u, v)]
        out.append((supp[0], u))
    return out


def _class_of(vec):
    """The basis index b with vec = b mod qL, or None if vec is in qL.
    Raises if vec is not in L or not congruent to a single basis element."""
    if not all(in_A0(x) for x in vec):
        raise AssertionError("vector is not in L")
    red = reduce_mod_q(vec)
    supp = [j for j, x in enumerate(red) if x]
    if not supp:
        return None
    if len(supp) != 1 or red[supp[0]] != 1:
        raise AssertionError("vector is not congruent to a crystal element")
    return supp[0]


def crystal_operators(M: UjModuleDatum) -> CrystalData:
    """String decomposition for each i: f_i^{(n)} u over lattice lifts u of
    the crystal elements killed by e~_i, reduced mod qL."""
    cached = getattr(M, "_crystal", None)
    if cached is not None:
        return cached
    cr = CrystalData(M.r, M.dim)
    blocks = M.weight_blocks()
    for i in range(1, M.r + 1):
        ftil, eps, phi = {}, {}, {}
        strings = []
        for w in sorted(blocks):
            for b, u in _hw_lattice_basis(M, i, blocks[w]):
                seq = []
                nn = 0
                while True:
                    v = _mv(M.gen_matrix("f", i, nn), u)
                    if not any(v):
                        break
                    c = _class_of(v)
                    if c is None:
                        raise AssertionError("f_i^(n) u vanishes mod qL")
                    seq.append(c)
                    nn += 1
                if seq[0] != b:
                    raise AssertionError("string does not start at its head")
                strings.append((b, u, seq))
                for k, c in enumerate(seq):
                    if c in eps:
                        raise AssertionError("strings overlap")
                    eps[c] = k
                    phi[c] = len(seq) - 1 - k
                    ftil[c] = seq[k + 1] if k + 1 < len(seq) else None
        if len(eps) != M.dim:
            raise AssertionError(f"strings for i={i} are not exhaustive")
        etil = {b: None for b in range(M.dim)}
        for b, c in ftil.items():
            if c is not None:
                etil[c] = b
        cr.ftil[i], cr.etil[i], cr.eps[i], cr.phi[i] = ftil, etil, eps, phi
        cr.strings[i] = strings
    M._crystal = cr
    return cr


def _in_q_poly_shift(c, shift):
    """c in q^shift Q[q] (no p, exponents of q at least shift)."""
    c = to_K(c)
    if not is_laurent_K(c):
        return False
    num, den = c.numer, c.denom
    (da, db), = den.keys()
    for (a, b) in num.keys():
        if a - da != 0 or b - db < shift:
            return False
    return True


def check_structure_constants(M: UjModuleDatum, strict=True):
    """f_i G(b) = [eps+1] G(f~ b) + sum over eps(b') > eps(b)+1 with
    coefficients in q^{2-eps(b')} Q[q].  Returns failures; with strict=False
    the side coefficients are only required to lie in q^{2-eps(b')} A0."""
    cr = crystal_operators(M)
    bad = []
    for i in range(1, M.r + 1):
        F = entries(M.f[i])
        for b in range(M.dim):
            e = cr.eps[i][b]
            fb = cr.ftil[i][b]
            for a in range(M.dim):
                x = F[a][b]
                if a == fb:
                    if x != q_int_K(e + 1):
                        bad.append(("leading", i, b, _fmt(x)))
                    continue
                if not x:
                    continue
                ea = cr.eps[i][a]
                if ea <= e + 1:
                    bad.append(("eps bound", i, b, a))
                elif strict and not _in_q_poly_shift(x, 2 - ea):
                    bad.append(("coefficient", i, b, a, _fmt(x)))
                elif not strict and valuation_K(x)[0] < (0, 2 - ea):
                    bad.append(("coefficient", i, b, a, _fmt(x)))
    return bad


# ---------------------------------------------------------------------------
# modified Kashiwara operators

def _A_coeff(i, n, t, c):
    """A_n(t; q^c) for i > 1, a_n(t; q^c) for i = 1."""
    out = K.one if t % 2 == 0 else -K.one
    out *= Q_K ** (t * (1 - n)) * Q_K ** (t * c)
    if i == 1:
        out *= P_K ** t
    for s in range(t):
        out *= (1 - Q_K ** (n + 2 * s))
        if i == 1:
            out *= Q_K ** s
    return out


def modified_kashiwara(M: UjModuleDatum, i, n):
    """Matrix of f~_i^{(n)} = sum_{t >= 0, -n} f_i^{(n+t)} e_i^{(t)} A_n(t; k_i)."""
    total = zeros(M.dim, M.dim)
    for t in range(max(0, -n), M.dim + 1):
        Et = M.gen_matrix("e", i, t)
        if Et.is_zero_matrix:
            break
        A = diag([_A_coeff(i, n, t, c) for c in M.kexp[i]])
        total = total + M.gen_matrix("f", i, n + t) * Et * A
    return total


def check_modified_kashiwara(G: GlobalBasisDatum, ns=range(0, 4)):
    """Lattice preservation and mod-q agreement with the crystal operators on
    G^low for the n in ``ns``; for r = 1 also the string coefficient c in
    1 + qA0 cap A of f~_1^{(n)} f_1^{(m)} u, m >= 0, m + n <= 3."""
    M = G.module
    cr = crystal_operators(M)
    bad = []
    for i in range(1, M.r + 1):
        for n in ns:
            Ft = modified_kashiwara(M, i, n)
            for b in range(M.dim):
                v = [row[b] for row in entries(Ft)]
                if not all(in_A0(x) for x in v):
                    bad.append(("lattice", i, n, b))
                    continue
                want = b
                for _ in range(abs(n)):
                    if want is not None:
                        want = (cr.ftil if n > 0 else cr.etil)[i][want]
                try:
                    got = _class_of(v)
                except AssertionError:
                    got = "mixed"
                if got != want:
                    bad.append(("mod q", i, n, b, got, want))
    if M.r == 1:
        u = _unit(M.dim, G.hw)
        for m in range(0, 4):
            fm = _mv(M.gen_matrix("f", 1, m), u)
            if not any(fm):
                continue
            for n in (n for n in ns if -m <= n <= 3 - m):
                lhs = _mv(modified_kashiwara(M, 1, n), fm)
                rhs = _mv(M.gen_matrix("f", 1, m + n), u)
                if not any(rhs):
                    if any(lhs):
                        bad.append(("string", m, n, "nonzero"))
                    continue
                j = next(k for k, x in enumerate(rhs) if x)
                c = lhs[j] / rhs[j]
                if any(x - c * y for x, y in zip(lhs, rhs)):
                    bad.append(("string", m, n, "not proportional"))
                elif not (_coeff_in_1_qA0(c) and _is_integral_laurent(c)):
                    bad.append(("string", m, n, _fmt(c)))
    return bad


# ---------------------------------------------------------------------------
# e~_{r+} and f~_{r+} for r = 2

class PlusOperator:
    """e~_{2+} on L(lambda), as a partial map on crystal classes and as vectors."""

    def __init__(self, etil, images, phis):
        self.etil = etil          # {b: b' or None}
        self.images = images      # {b: vector of e~_{2+} u_b}
        self.phis = phis

    @property
    def ftil(self):
        out = {}
        for b, c in self.etil.items():
            if c is not None:
                out[c] = b
        return out


def _uj1_components(M):
    """{weight: (u, length)}: lattice-normalized U^j_1-highest weight vectors,
    one per (k_1, k_2)-weight; asserts multiplicity-freeness."""
    blocks = M.weight_blocks()
    comps = {}
    total = 0
    for w in sorted(blocks):
        hws = _hw_lattice_basis(M, 1, blocks[w])
        if len(hws) > 1:
            raise AssertionError(f"branching to U^j_1 is not multiplicity-free at weight {w}")
        for b, u in hws:
            length = 0
            while any(_mv(M.gen_matrix("f", 1, length), u)):
                length += 1
            comps[w] = (b, u, length)
            total += length
    if total != M.dim:
        raise AssertionError("U^j_1-components do not exhaust the module")
    return comps


def etil_plus(G: GlobalBasisDatum) -> PlusOperator:
    """e~_{2+} = sum over mu in E_2(lambda) of p_2(mu) e_2 p_1(mu) / [phi + 1]."""
    lam = G.lam
    if lam.r != 2:
        raise ValueError("e~_{r+} is implemented for r = 2")
    M = G.module
    comps = _uj1_components(M)
    # basis of M adapted to the U^j_1-decomposition
    vecs, where = [], []
    for w in sorted(comps):
        b, u, length = comps[w]
        for k in range(length):
            vecs.append(_mv(M.gen_matrix("f", 1, k), u))
            where.append((w, k))
    Binv = inverse(_columns(vecs, M.dim))
    etil = {b: None for b in range(M.dim)}
    images, phis = {}, {}
    l0, l1m = lam.row(0), lam.row(-1)
    for mu in e_r_set(lam):
        m1 = mu.row(1)
        comp = (l0, lam.row(-1) + m1, lam.row(-2) + lam.row(1) - m1 + lam.row(2))
        w = composition_wtj(comp)
        if w not in comps:
            raise AssertionError(f"no U^j_1-highest weight vector for {mu}")
        b, u, length = comps[w]
        if length != l0 - l1m + 1:
            raise AssertionError(f"component of {mu} has the wrong length")
        v = _mv(M.e[2], u)
        coords = _mv(Binv, v)
        target = w + WeightJ(gamma(2)[1])
        if target not in comps:
            images[b] = [K.zero] * M.dim
            continue
        k0 = where.index((target, 0))
        c = coords[k0]
        if not c:
            images[b] = [K.zero] * M.dim
            continue
        val = valuation_K(c)[0]
        if val[0] != 0:
            raise AssertionError("projection coefficient has a p-valuation")
        phi = -val[1]
        b2, u2, _ = comps[target]
        img = [x * c / q_int_K(phi + 1) for x in u2]
        images[b] = img
        phis[b] = phi
        etil[b] = _class_of(img)
    return PlusOperator(etil, images, phis)


def check_etil_plus(G: GlobalBasisDatum):
    """e~_{2+} preserves L and B u {0}; B(lambda) is connected under f~_1, f~_2, f~_{2+}."""
    bad = []
    try:
        op = etil_plus(G)
    except AssertionError as exc:
        return [("construction", str(exc))]
    M = G.module
    for b, vec in op.images.items():
        if not all(in_A0(x) for x in vec):
            bad.append(("lattice", b))
    for b, c in op.etil.items():
        if c is not None and M.weights[c] != M.weights[b] + WeightJ(gamma(2)[1]):
            bad.append(("weight", b, c))
    cr = crystal_operators(M)
    seen = {G.hw}
    stack = [G.hw]
    plus = op.ftil
    while stack:
        b = stack.pop()
        nbrs = [cr.ftil[1][b], cr.ftil[2][b], plus.get(b)]
        for c in nbrs:
            if c is not None and c not in seen:
                seen.add(c)
                stack.append(c)
    if len(seen) != M.dim:
        bad.append(("not connected", sorted(set(range(M.dim)) - seen)))
    return bad


# ---------------------------------------------------------------------------
# the filtration theorem on V^{tensor d}

def _presentation(G: GlobalBasisDatum):
    """Spanning words of L(lambda) from v and the structure constants of the
    generators on them: {(g, k): coords}."""
    M = G.module
    words, vecs = _spanning_words(M, G.hw)
    Binv = inverse(_columns(vecs, M.dim))
    consts = {}
    for i in range(1, M.r + 1):
        for name in ("e", "f"):
            g = M.e[i] if name == "e" else M.f[i]
            for k, v in enumerate(vecs):
                consts[((name, i), k)] = _mv(Binv, _mv(g, v))
    return words, vecs, Binv, consts


def _hom_space(G, T):
    """Basis of {u in T : v -> u extends to a homomorphism L(lambda) -> T}."""
    words, _, _, consts = _presentation(G)
    n = T.dim
    Wm = [_word_matrix(T, w) for w in words]
    blocks = []
    for ((name, i), k), cs in consts.items():
        g = T.e[i] if name == "e" else T.f[i]
        A = g * Wm[k]
        for l, c in enumerate(cs):
            if c:
                A = A - Wm[l].mul(c)
        blocks.append(A)
    # the k_i-equations confine u to the weight space of the highest weight
    idx = [j for j in range(n) if T.weights[j] == wtj(G.lam)]
    if not idx:
        return [], words, Wm
    rows = []
    for A in blocks:
        for row in entries(A):
            r = [row[j] for j in idx]
            if any(r):
                rows.append(r)
    if not rows:
        ker = [_unit(len(idx), k) for k in range(len(idx))]
    else:
        ker = nullspace(DomainMatrix(rows, (len(rows), len(idx)), K))
    out = []
    for v in ker:
        u = [K.zero] * n
        for j, x in zip(idx, v):
            u[j] = x
        out.append(u)
    return out, words, Wm


class FiltrationReport:
    def __init__(self):
        self.multiplicities = {}
        self.I = {}
        self.failures = []
        self.dim = 0

    def ok(self):
        return not self.failures

    def lines(self):
        out = [f"dim {self.dim}"]
        for lam in sorted(self.multiplicities, key=str):
            out.append(f"{lam} : {self.multiplicities[lam]}")
        for f in self.failures:
            out.append(f"FAIL {f}")
        return out


def filtration_check(r, d) -> FiltrationReport:
    """Isotypic filtration of V^d by {^lambda C_w}: KL-spannedness, I(b),
    subquotient global bases and multiplicities."""
    rep = FiltrationReport()
    T = tensor_uj_module(r, d)
    n = rep.dim = T.dim
    S = schur_algebra(r, d)
    fails = rep.failures
    for x in check_tensor_module(T, r, d):
        fails.append(("tensor action", x))
    for lam, w in T.tkl:
        t = S.tkl_C(lam, w)
        if S.bar_T(t) != t:
            fails.append(("bar-fixed", (lam, w)))
    for i in range(1, r + 1):
        for g in (T.e[i], T.f[i]):
            if not _same(bar_matrix(g), g):
                fails.append(("psi intertwines", i))
    lams = [lam for dd in [d] for lam in enumerate_bipartitions(r, dd)]
    img, homs = {}, {}
    for lam in lams:
        G = build_irreducible(lam)
        hs, words, Wm = _hom_space(G, T)
        homs[lam] = (G, hs, words, Wm)
        rep.multiplicities[lam] = len(hs)
        img[lam] = [_mv(Wk, u) for u in hs for Wk in Wm]
    total = sum(rep.multiplicities[lam] * len(enumerate_sst(lam)) for lam in lams)
    if total != n:
        fails.append(("dimension count", total, n))

    def W_geq(lam, strict):
        vecs = []
        for mu in lams:
            if dominance_leq(lam, mu, "bipar") and (mu != lam or not strict):
                vecs += img[mu]
        return vecs

    def members(vecs):
        vecs = [v for v in vecs if any(v)]
        if not vecs:
            return [], 0
        R, piv = DomainMatrix(vecs, (len(vecs), n), K).rref()
        R = entries(R)
        # e_b lies in the span iff b is a pivot whose reduced row is e_b
        out = [b for k, b in enumerate(piv) if sum(1 for x in R[k] if x) == 1]
        return out, len(piv)

    spans = {}
    for lam in lams:
        for strict in (False, True):
            vecs = W_geq(lam, strict)
            mem, rk = members(vecs)
            if len(mem) != rk:
                fails.append(("not KL-spanned", str(lam), strict))
            spans[(lam, strict)] = set(mem)
    for b in range(n):
        hits = [lam for lam in lams if b in spans[(lam, False)] and b not in spans[(lam, True)]]
        if len(hits) != 1:
            fails.append(("I(b)", T.labels[b], [str(x) for x in hits]))
        else:
            rep.I[b] = hits[0]
    if r == 1:
        cr = crystal_operators(T)
        for b in range(n):
            head = b
            while cr.etil[1][head] is not None:
                head = cr.etil[1][head]
            a = T.kexp[1][head]
            length = cr.eps[1][b] + cr.phi[1][b]
            l0 = Fraction(a + d, 3)
            if l0.denominator != 1:
                fails.append(("string weight", b))
                continue
            l0 = int(l0)
            guess = (l0, l0 - length, d - 2 * l0 + length)
            if b in rep.I and (rep.I[b].row(0), rep.I[b].row(-1), rep.I[b].row(1)) != guess:
                fails.append(("I(b) versus strings", T.labels[b], str(rep.I[b]), guess))
    # subquotients against the global basis of L(lambda)
    for lam in lams:
        G, hs, words, Wm = homs[lam]
        if not hs:
            continue
        below = spans[(lam, True)]
        mine = sorted(b for b in range(n) if rep.I.get(b) == lam)
        heads = [b for b in mine if T.weights[b] == wtj(lam)]
        if len(heads) != rep.multiplicities[lam]:
            fails.append(("hw count", str(lam), len(heads)))
            continue
        _, _, Binv, consts = _presentation(G)

        def modW(v):
            return [K.zero if j in below else x for j, x in enumerate(v)]

        hit = []
        for h in heads:
            u = _unit(n, h)
            wv = [_mv(Wk, u) for Wk in Wm]
            for ((name, i), k), cs in consts.items():
                g = T.e[i] if name == "e" else T.f[i]
                lhs = _mv(g, wv[k])
                for l, c in enumerate(cs):
                    if c:
                        lhs = [x - c * y for x, y in zip(lhs, wv[l])]
                if any(modW(lhs)):
                    fails.append(("not a homomorphism mod W>", str(lam), T.labels[h]))
                    break
            E = entries(Binv)
            for bb in range(G.dim):
                vec = [K.zero] * n
                for k in range(G.dim):
                    if E[k][bb]:
                        vec = [x + E[k][bb] * y for x, y in zip(vec, wv[k])]
                vec = modW(vec)
                supp = [j for j, x in enumerate(vec) if x]
                if len(supp) != 1 or vec[supp[0]] != K.one or supp[0] not in mine:
                    fails.append(("global basis mismatch", str(lam), T.labels[h], bb))
                else:
                    hit.append(supp[0])
        if sorted(hit) != mine:
            fails.append(("subquotient basis not matched", str(lam)))
    return rep


# ---------------------------------------------------------------------------
# output

def irrep_json(lam: Bipartition) -> str:
    G = build_irreducible(lam)
    S = schur_algebra(lam.r, lam.size)
    data = G.module.to_json()
    data.update({
        "bipartition": str(lam),
        "r": lam.r,
        "d": lam.size,
        "cell": [S.W.format(x) for x in G.X],
        "hw": G.hw,
        "tableaux": [str(t) if t is not None else None for t in G.tableaux],
        "gram1": _matrix_json(form1(G)),
        "gram2": _matrix_json(form2(G)),
        "low_basis": _matrix_json(G.low),
        "up_basis": _matrix_json(G.up),
    })
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def crystal_graph_dot(lam: Bipartition) -> str:
    G = build_irreducible(lam)
    M = G.module
    cr = crystal_operators(M)
    lines = ["digraph crystal {"]
    for b in range(M.dim):
        t = G.tableaux[b]
        label = str(t) if t is not None else M.labels[b]
        lines.append(f'  n{b} [label="{label}"];')
    for i in range(1, M.r + 1):
        for b in range(M.dim):
            c = cr.ftil[i][b]
            if c is not None:
                lines.append(f'  n{b} -> n{c} [label="f{i}"];')
    if M.r == 2:
        for b, c in sorted(etil_plus(G).ftil.items()):
            lines.append(f'  n{b} -> n{c} [label="f2+"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
