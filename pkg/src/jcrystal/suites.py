"""Named verification checks, grouped into suites.

Every check returns a list of witnesses; an empty list means it passed.
The acceptance criteria are the checks named ``criterion_1`` ... ``criterion_10``.

>>> run_check("ring.units")
[]
"""

from __future__ import annotations

import random
from itertools import combinations

from .bipartition import Bipartition, enumerate_bipartitions, enumerate_sst, sst_wtj
from .globalcrystal import (build_irreducible, check_etil_plus, check_modified_kashiwara,
                            check_structure_constants, check_theorem, crystal_operators,
                            filtration_check, string_basis)
from .hecke import hecke_algebra
from .kl import check_kl_table, dual_kl_basis, form, form_J, form_direct, kl_basis, left_cells, parabolic_bases
from .linalg import entries, eye
from .ring import ONE, ZERO, LaurentPoly, P, Q, laurent_gcd, q_factorial, q_integer
from .schur import schur_algebra
from .ujrep import (UjExpr, apply_automorphism, check_commutation, check_divided_power_identity,
                    check_relations, check_surjection_formulas, gen, xi_of_expr)
from .weyl_b import weyl_group

__all__ = ["SUITES", "CRITERIA", "run_check", "suite_checks", "irreducible_scope"]


def _subsets(xs):
    xs = list(xs)
    for k in range(len(xs) + 1):
        yield from combinations(xs, k)


# -- ring ---------------------------------------------------------------

def ring_units():
    bad = []
    x = P * Q + Q ** -2 - 3
    if x * ONE != x or x + ZERO != x or (x - x) != ZERO:
        bad.append("identities")
    if x.bar().bar() != x:
        bad.append("bar is not an involution")
    if (q_integer(3) * q_integer(2)).exact_div(q_integer(2)) != q_integer(3):
        bad.append("exact division")
    return bad


def criterion_9():
    """gcd_{t=1..n+1} prod_{l<n} [m+t-l] = [n]! up to a unit, 1 <= n <= m <= 5."""
    bad = []
    for m in range(1, 6):
        for n in range(1, m + 1):
            prods = []
            for t in range(1, n + 2):
                x = ONE
                for l in range(n):
                    x = x * q_integer(m + t - l)
                prods.append(x)
            if laurent_gcd(prods) != laurent_gcd([q_factorial(n)]):
                bad.append((m, n))
    return bad


# -- weyl_b -------------------------------------------------------------

def weyl_orders():
    bad = []
    for d, order in ((1, 2), (2, 8), (3, 48)):
        W = weyl_group(d)
        if len(W) != order:
            bad.append(("order", d))
        if W._len[W.longest()] != d * d:
            bad.append(("longest", d))
        for J in _subsets(W.gens):
            if len(W.min_coset_reps(J)) * len(W.parabolic(J)) != order:
                bad.append(("cosets", d, J))
    return bad


# -- hecke --------------------------------------------------------------

def hecke_relations():
    bad = []
    for d in (2, 3):
        H = hecke_algebra(d)
        for s in H.W.gens:
            h = H.gen(s)
            lhs = H.mul(h, h)
            rhs = H.one() + H.scalar(H.quad[s]) * h
            if lhs != rhs:
                bad.append(("quadratic", d, s))
        for w in range(len(H.W)):
            b = H.basis(w)
            if H.bar(H.bar(b)) != b:
                bad.append(("bar", d, w))
    return bad


# -- kl -----------------------------------------------------------------

def criterion_1():
    bad = []
    for d in (2, 3):
        H = hecke_algebra(d)
        C, D = kl_basis(d), dual_kl_basis(d)
        bad += [("C", d) + w for w in check_kl_table(C)]
        bad += [("D", d) + w for w in check_kl_table(D)]
        for w in range(len(H.W)):
            s = H.sgn(C.elt(w))
            if H.W._len[w] % 2:
                s = -s
            if D.elt(w) != s:
                bad.append(("sgn", d, w))
    return bad


def criterion_2(samples=500, seed=0):
    bad = []
    H = hecke_algebra(2)
    W = H.W
    C, D = kl_basis(2), dual_kl_basis(2)
    w0 = W.longest()
    for y in range(len(W)):
        for w in range(len(W)):
            v = form(H, C.elt(y), D.elt(w))
            if v != (ONE if y == W.mul(w, w0) else ZERO):
                bad.append(("B2", y, w))
    H3 = hecke_algebra(3)
    W3 = H3.W
    C3, D3 = kl_basis(3), dual_kl_basis(3)
    rng = random.Random(seed)
    w03 = W3.longest()
    pairs = set()
    # every y is paired with its dual partner, the rest is random
    for w in range(len(W3)):
        pairs.add((W3.mul(w, w03), w))
    while len(pairs) < samples:
        pairs.add((rng.randrange(len(W3)), rng.randrange(len(W3))))
    for y, w in sorted(pairs):
        v = form(H3, C3.elt(y), D3.elt(w))
        if v != form_direct(H3, C3.elt(y), D3.elt(w)):
            bad.append(("B3 routes", y, w))
        if v != (ONE if y == W3.mul(w, w03) else ZERO):
            bad.append(("B3", y, w))
    for J in _subsets(W.gens):
        J = frozenset(J)
        wJ = W.longest_in(J)
        bases = parabolic_bases(2, J)
        for y, (jc, _) in bases.items():
            for w, (_, jd) in bases.items():
                v = form_J(H, J, jc, jd)
                if v != (ONE if y == W.mul(W.mul(wJ, w), w0) else ZERO):
                    bad.append(("parabolic", sorted(J), y, w))
    return bad


def criterion_3():
    bad = []
    for d in (1, 2, 3):
        H = hecke_algebra(d)
        W = H.W
        C, D = kl_basis(d), dual_kl_basis(d)
        for J in _subsets(W.gens):
            J = frozenset(J)
            wJ = W.longest_in(J)
            xJ = H.x_J(J)
            if xJ != C.elt(wJ):
                bad.append(("x_J", d, sorted(J)))
            try:
                bases = parabolic_bases(d, J)
            except AssertionError as exc:
                bad.append(("parabolic", d, sorted(J), str(exc)))
                continue
            for w, (jc, jd) in bases.items():
                if jc != C.elt(W.mul(wJ, w)) or jd != H.mul(xJ, D.elt(w)):
                    bad.append(("bases", d, sorted(J), w))
            reps = set(W.min_coset_reps(J))
            for y in range(len(W)):
                if y not in reps and H.mul(xJ, D.elt(y)):
                    bad.append(("x_J D_y", d, sorted(J), y))
            if H.mul(xJ, xJ) != H.scalar(H.P_J(J)) * xJ:
                bad.append(("x_J^2", d, sorted(J)))
    return bad


def cells_partition():
    bad = []
    for d in (1, 2, 3):
        cd = left_cells(d)
        if sum(cd.sizes()) != len(cd.W):
            bad.append(("sizes", d))
        for X in cd.cells:
            if tuple(sorted(cd.times_w0(cd.times_w0(X)))) != tuple(X):
                bad.append(("w0", d, X))
    return bad


# -- schur and bipartition ----------------------------------------------

def schur_flat():
    bad = []
    S = schur_algebra(1, 2)
    for (a, b), prod in S.structure_constants().items():
        from .schur import SElt
        fa, fb = SElt(S, {a: ONE}).flat(), SElt(S, {b: ONE}).flat()
        if prod.flat() != S.compose(fb, fa):
            bad.append((a, b))
    return bad


def sst_counts():
    bad = []
    for r in (1, 2):
        for d in (1, 2, 3):
            for lam in enumerate_bipartitions(r, d):
                T = enumerate_sst(lam)
                if len(T) != len([sst_wtj(t) for t in T]) or not all(t.is_semistandard() for t in T):
                    bad.append((r, str(lam)))
    return bad


# -- ujrep --------------------------------------------------------------

def criterion_4():
    bad = []
    for r in (1, 2):
        for d in (1, 2, 3):
            bad += [("relation", r, d) + tuple(map(str, x)) for x in check_relations(r, d)]
            bad += [("commutation", r, d) + tuple(map(str, x)) for x in check_commutation(r, d)]
            bad += [("surjection", r, d) + tuple(map(str, x)) for x in check_surjection_formulas(r, d)]
            S = schur_algebra(r, d)
            for i in range(1, r + 1):
                for g in (gen("e", i), gen("f", i), gen("k", i), gen("k", i, -1)):
                    xi = xi_of_expr(S, g)
                    if xi_of_expr(S, apply_automorphism("sigmaj", g)) != S.flat(xi):
                        bad.append(("sigma", r, d, repr(g)))
                    if xi_of_expr(S, apply_automorphism("psij", g)) != S.bar(xi):
                        bad.append(("psi", r, d, repr(g)))
    return bad


def criterion_5():
    bad = []
    for r in (1, 2):
        for d in (1, 2, 3):
            bad += [(r, d) + tuple(map(str, x)) for x in check_divided_power_identity(r, d, 3)]
    return bad


# -- globalcrystal ------------------------------------------------------

def irreducible_scope():
    """r = 1 with |lambda| <= 3 and r = 2 with |lambda| <= 2."""
    out = []
    for r, dmax in ((1, 3), (2, 2)):
        for d in range(1, dmax + 1):
            out += enumerate_bipartitions(r, d)
    return out


def criterion_6():
    bad = []
    for lam in irreducible_scope():
        G = build_irreducible(lam)
        for item, fails in check_theorem(G).items():
            bad += [(str(lam), item, str(f)) for f in fails]
        sst = enumerate_sst(lam)
        if sorted(sst_wtj(t) for t in sst) != sorted(G.module.weights):
            bad.append((str(lam), "character"))
    return bad


def criterion_7():
    bad = []
    for k in (1, 2, 3):
        lam = Bipartition((k, 0), (0,))
        G = build_irreducible(lam)
        B = string_basis(G)
        if entries(B) != entries(eye(G.dim).to_dense()):
            bad.append(str(lam))
    return bad


def criterion_8():
    bad = []
    for lam in irreducible_scope():
        G = build_irreducible(lam)
        bad += [(str(lam),) + tuple(map(str, f)) for f in check_modified_kashiwara(G, range(0, 4))]
    return bad


def crystal_structure():
    """Leading coefficients of f_i on G^low, e~ f~ = id, and e~_{2+} for r = 2."""
    bad = []
    for lam in irreducible_scope():
        G = build_irreducible(lam)
        cr = crystal_operators(G.module)
        for i in range(1, lam.r + 1):
            for b, c in cr.ftil[i].items():
                if c is not None and cr.etil[i][c] != b:
                    bad.append((str(lam), "etil ftil", i, b))
        bad += [(str(lam),) + tuple(map(str, f)) for f in check_structure_constants(G.module)]
        if lam.r == 2:
            bad += [(str(lam), "plus") + tuple(map(str, f)) for f in check_etil_plus(G)]
    return bad


def criterion_10():
    bad = []
    expect = {((2, 0), (0,)): 1, ((1, 1), (0,)): 1, ((1, 0), (1,)): 2, ((0, 0), (2,)): 1}
    for d in (2, 3):
        rep = filtration_check(1, d)
        bad += [(d,) + tuple(map(str, f)) for f in rep.failures]
        total = sum(m * len(enumerate_sst(lam)) for lam, m in rep.multiplicities.items())
        if total != 3 ** d:
            bad.append((d, "dimension", total))
        if d == 2:
            got = {(lam.minus, lam.plus): m for lam, m in rep.multiplicities.items()}
            if got != expect:
                bad.append((d, "multiplicities", sorted(got.items())))
    return bad


SUITES = {
    "ring": [("units", ring_units), ("criterion_9", criterion_9)],
    "weyl_b": [("orders", weyl_orders)],
    "hecke": [("relations", hecke_relations)],
    "kl": [("criterion_1", criterion_1), ("criterion_2", criterion_2),
           ("criterion_3", criterion_3), ("cells", cells_partition)],
    "schur": [("flat", schur_flat)],
    "bipartition": [("sst", sst_counts)],
    "ujrep": [("criterion_4", criterion_4), ("criterion_5", criterion_5)],
    "globalcrystal": [("criterion_6", criterion_6), ("criterion_7", criterion_7),
                      ("criterion_8", criterion_8), ("crystal", crystal_structure),
                      ("criterion_10", criterion_10)],
}

CRITERIA = {
    1: "kl.criterion_1", 2: "kl.criterion_2", 3: "kl.criterion_3", 4: "ujrep.criterion_4",
    5: "ujrep.criterion_5", 6: "globalcrystal.criterion_6", 7: "globalcrystal.criterion_7",
    8: "globalcrystal.criterion_8", 9: "ring.criterion_9", 10: "globalcrystal.criterion_10",
}


def suite_checks(suite):
    """Fully qualified check names of a suite ('all' for every suite)."""
    if suite == "all":
        return [f"{s}.{n}" for s in SUITES for n, _ in SUITES[s]]
    if suite not in SUITES:
        raise KeyError(suite)
    return [f"{suite}.{n}" for n, _ in SUITES[suite]]


def run_check(name):
    suite, check = name.split(".", 1)
    fn = dict(SUITES[suite])[check]
    return fn()
