"""Exact linear algebra over Q(p, q).

Matrices are sympy ``DomainMatrix`` objects over the fraction field
QQ(p, q); this module converts between that field and the package's own
``LaurentPoly``/``RationalFn`` types and adds the lattice-aware routines
(valuations, A0-echelon forms, reduction mod q) used by the crystal code.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ, symbols
from sympy.polys.matrices import DomainMatrix

from .ring import LaurentPoly, RationalFn, a0_test

__all__ = [
    "K", "P_K", "Q_K", "to_K", "from_K", "bar_K", "valuation_K", "in_A0", "in_qA0",
    "origin_value", "is_laurent_K", "mat", "zeros", "eye", "diag", "col", "entries",
    "nullspace", "rank", "inverse", "solve_left", "a0_echelon", "reduce_mod_q",
    "bar_matrix", "q_int_K", "from_dict", "check_a0_agrees",
]

_p, _q = symbols("p q")
K = QQ.frac_field(_p, _q)
P_K, Q_K = K.gens


def _poly_from_dict(terms):
    """sum c p^a q^b with possibly negative exponents, as a field element."""
    x = K.zero
    for (a, b), c in terms.items():
        x += K.convert(QQ(c.numerator, c.denominator)) * P_K ** a * Q_K ** b
    return x


def to_K(x):
    if K.of_type(x):
        return x
    if isinstance(x, LaurentPoly):
        return _poly_from_dict(x.t)
    if isinstance(x, RationalFn):
        return _poly_from_dict(x.num.t) / _poly_from_dict(x.den.t)
    if isinstance(x, (int, Fraction)):
        return K.convert(QQ(Fraction(x).numerator, Fraction(x).denominator))
    return K.convert(x)


def _lp_from_poly(f):
    return LaurentPoly({tuple(k): Fraction(int(v.numerator), int(v.denominator)) for k, v in f.items()})


def from_K(x):
    """Field element -> LaurentPoly (when the denominator is a monomial) or RationalFn."""
    num, den = _lp_from_poly(x.numer), _lp_from_poly(x.denom)
    if den.is_monomial():
        return num / den
    return RationalFn(num, den)


def _bar_poly(f):
    x = K.zero
    for (a, b), c in f.items():
        x += K.convert(c) * P_K ** (-a) * Q_K ** (-b)
    return x


def bar_K(x):
    return _bar_poly(x.numer) / _bar_poly(x.denom)


def _poly_val(f):
    k = min(f.keys())
    return k, f[k]


def valuation_K(x):
    """((a, b), leading rational) in the lex order, p first; None for 0."""
    if not x:
        return None
    (a1, b1), c1 = _poly_val(x.numer)
    (a2, b2), c2 = _poly_val(x.denom)
    c = Fraction(int(c1.numerator), int(c1.denominator)) / Fraction(int(c2.numerator), int(c2.denominator))
    return (a1 - a2, b1 - b2), c


def in_A0(x):
    v = valuation_K(x)
    return v is None or v[0] >= (0, 0)


def in_qA0(x):
    v = valuation_K(x)
    return v is None or v[0] >= (0, 1)


def origin_value(x):
    """lim_{q->0} lim_{p->0} x for x in A0."""
    v = valuation_K(x)
    if v is None:
        return Fraction(0)
    if v[0] < (0, 0):
        raise ValueError("not in A0")
    return v[1] if v[0] == (0, 0) else Fraction(0)


def check_a0_agrees(x):
    """Cross-check the field-level A0 test against the ring module's."""
    mine = (in_A0(x), in_qA0(x))
    theirs = a0_test(from_K(x))[:2]
    return mine == tuple(theirs)


def is_laurent_K(x):
    """Is x in Q[p^+-1, q^+-1], i.e. is its reduced denominator a monomial?"""
    return len(x.denom.terms()) == 1


@lru_cache(maxsize=None)
def q_int_K(n):
    if n == 0:
        return K.zero
    s = K.zero
    for k in range(abs(n)):
        s += Q_K ** (abs(n) - 1 - 2 * k)
    return s if n > 0 else -s


# -- matrices -------------------------------------------------------------

def mat(rows):
    rows = [[to_K(x) for x in row] for row in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (n, m), K)


def zeros(n, m):
    return DomainMatrix.zeros((n, m), K)


def eye(n):
    return DomainMatrix.eye(n, K)


def diag(xs):
    n = len(xs)
    rows = [[K.zero] * n for _ in range(n)]
    for i, x in enumerate(xs):
        rows[i][i] = to_K(x)
    return DomainMatrix(rows, (n, n), K)


def from_dict(n, m, d):
    """Matrix from {(row, col): entry}."""
    rows = [[K.zero] * m for _ in range(n)]
    for (i, j), x in d.items():
        rows[i][j] = to_K(x)
    return DomainMatrix(rows, (n, m), K)


def entries(M):
    return M.to_dense().rep.to_ddm()


def col(M, j):
    return [row[j] for row in entries(M)]


def nullspace(M):
    """Basis of {x : M x = 0} as a list of column lists."""
    ns = M.to_dense().nullspace()
    return [list(r) for r in entries(ns)] if ns.shape[0] else []


def rank(M):
    return M.to_dense().rank()


def inverse(M):
    return M.to_dense().inv()


def solve_left(A, b):
    """Solve A x = b for a single column b (list); asserts consistency and uniqueness."""
    n, m = A.shape
    aug = DomainMatrix([list(r) + [to_K(b[i])] for i, r in enumerate(entries(A))], (n, m + 1), K)
    rref, piv = aug.to_dense().rref()
    if m in piv:
        raise ArithmeticError("inconsistent linear system")
    if len(piv) != m:
        raise ArithmeticError("linear system is not uniquely solvable")
    R = entries(rref)
    return [R[k][m] for k in range(m)]


def bar_matrix(M):
    E = entries(M)
    n, m = M.shape
    return DomainMatrix([[bar_K(x) for x in row] for row in E], (n, m), K)


def a0_echelon(vectors):
    """A0-basis of span(vectors) intersected with A0^n.

    Pivots are chosen of minimal valuation, so every multiplier used lies in
    A0; the rows returned are in A0^n and unitriangular on their pivots.
    Returns a list of (pivot index, vector).
    """
    rows = [[to_K(x) for x in v] for v in vectors]
    rows = [v for v in rows if any(v)]
    out = []
    used = set()
    while rows:
        best = None
        for ri, row in enumerate(rows):
            for j, x in enumerate(row):
                if j in used or not x:
                    continue
                v = valuation_K(x)[0]
                if best is None or v < best[0]:
                    best = (v, ri, j)
        if best is None:
            break
        _, ri, j = best
        piv = rows.pop(ri)
        inv = 1 / piv[j]
        piv = [x * inv for x in piv]
        used.add(j)
        new = []
        for row in rows:
            f = row[j]
            if f:
                row = [x - f * y for x, y in zip(row, piv)]
            if any(row):
                new.append(row)
        rows = new
        out.append((j, piv))
    return out


def reduce_mod_q(vec):
    """Image in L/qL of a vector in A0^n: its tuple of origin values."""
    return tuple(origin_value(x) for x in vec)
