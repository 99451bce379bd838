"""Partitions, bipartitions, semistandard bitableaux and the weight lattice.

A bipartition of rank r is a pair (minus; plus) of partitions padded to
lengths r+1 and r.  Rows are indexed 0, -1, ..., -r for the minus part and
1, ..., r for the plus part.  Minus entries use the order 0 < -1 < ... < -r.

>>> lam = Bipartition.parse("((1,0);(1))")
>>> lam.row(0), lam.row(-1), lam.row(1)
(1, 0, 1)
>>> len(enumerate_sst(lam))
2
>>> wtj(lam)
WeightJ(coords=(1,))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Bipartition",
    "Bitableau",
    "WeightJ",
    "partitions",
    "enumerate_bipartitions",
    "enumerate_sst",
    "dominance_leq",
    "wtj",
    "composition_wtj",
    "sst_composition",
    "sst_wtj",
    "horizontal_strip",
    "downarrow",
    "content_count",
    "t_lambda",
    "e_r_set",
    "shift_equivalent",
    "gamma",
]


def _check_partition(p, length):
    p = tuple(int(x) for x in p)
    if len(p) != length:
        raise ValueError(f"expected {length} parts, got {p}")
    if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not a partition: {p}")
    return p


@dataclass(frozen=True, order=True)
class Bipartition:
    minus: tuple
    plus: tuple

    def __post_init__(self):
        r = len(self.minus) - 1
        if r < 1:
            raise ValueError("rank must be at least 1")
        object.__setattr__(self, "minus", _check_partition(self.minus, r + 1))
        object.__setattr__(self, "plus", _check_partition(self.plus, r))

    @property
    def r(self):
        return len(self.plus)

    @property
    def size(self):
        return sum(self.minus) + sum(self.plus)

    def row(self, i):
        """lambda_i for -r <= i <= r."""
        if i <= 0:
            return self.minus[-i]
        return self.plus[i - 1]

    def rows(self):
        return {i: self.row(i) for i in range(-self.r, self.r + 1)}

    def __str__(self):
        return "((" + ",".join(map(str, self.minus)) + ");(" + ",".join(map(str, self.plus)) + "))"

    __repr__ = __str__

    def to_json(self):
        return [list(self.minus), list(self.plus)]

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*\(\s*\(([-\d,\s]*)\)\s*;\s*\(([-\d,\s]*)\)\s*\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse bipartition {text!r}")

        def ints(s):
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()
        return cls(ints(m.group(1)), ints(m.group(2)))


@lru_cache(maxsize=None)
def partitions(n, length):
    """Partitions of n with exactly ``length`` parts (zeros allowed), in
    reverse lexicographic order."""
    if length == 0:
        return ((),) if n == 0 else ()
    out = []

    def rec(rest, slots, cap, acc):
        if slots == 0:
            if rest == 0:
                out.append(tuple(acc))
            return
        for x in range(min(rest, cap), -1, -1):
            if x * slots < rest:
                break
            rec(rest - x, slots - 1, x, acc + [x])
    rec(n, length, n, [])
    return tuple(out)


def enumerate_bipartitions(r, n):
    """All bipartitions of n of length (r+1; r), |minus| descending."""
    out = []
    for k in range(n, -1, -1):
        for pm in partitions(k, r + 1):
            for pp in partitions(n - k, r):
                out.append(Bipartition(pm, pp))
    return out


@dataclass(frozen=True, order=True)
class Bitableau:
    """Rows of T^- (letters 0, -1, ..., -r) and T^+ (letters 1, ..., r)."""

    tminus: tuple
    tplus: tuple

    @property
    def r(self):
        return len(self.tplus)

    def shape(self):
        return Bipartition(tuple(len(x) for x in self.tminus), tuple(len(x) for x in self.tplus))

    def entries(self):
        for row in self.tminus + self.tplus:
            yield from row

    def __str__(self):
        def fmt(rows):
            return "/".join(",".join(map(str, row)) for row in rows if row)
        return "(" + fmt(self.tminus) + ";" + fmt(self.tplus) + ")"

    __repr__ = __str__

    def to_json(self):
        return [[list(x) for x in self.tminus], [list(x) for x in self.tplus]]

    def is_semistandard(self):
        for rows, rank in ((self.tminus, lambda x: -x), (self.tplus, lambda x: x)):
            for k, row in enumerate(rows):
                if any(rank(row[j]) > rank(row[j + 1]) for j in range(len(row) - 1)):
                    return False
                if k > 0:
                    above = rows[k - 1]
                    if len(row) > len(above):
                        return False
                    if any(rank(above[j]) >= rank(row[j]) for j in range(len(row))):
                        return False
        return True


def _ssyt(shape, ranks):
    """Semistandard fillings of a partition shape by the totally ordered
    values ``ranks`` (a list of comparable integers, ascending)."""
    cells = [(i, j) for i, n in enumerate(shape) for j in range(n)]
    out = []
    filling = {}

    def rec(k):
        if k == len(cells):
            out.append(tuple(tuple(filling[(i, j)] for j in range(shape[i])) for i in range(len(shape))))
            return
        i, j = cells[k]
        lo = ranks[0]
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        for v in ranks:
            if v < lo:
                continue
            if i > 0 and v <= filling[(i - 1, j)]:
                continue
            filling[(i, j)] = v
            rec(k + 1)
        filling.pop((i, j), None)
    rec(0)
    return out


def enumerate_sst(lam: Bipartition):
    """SST(lambda) in a deterministic order."""
    r = lam.r
    minus = _ssyt(lam.minus, list(range(0, r + 1)))
    plus = _ssyt(lam.plus, list(range(1, r + 1)))
    out = []
    for tm in minus:
        for tp in plus:
            out.append(Bitableau(tuple(tuple(-x for x in row) for row in tm), tp))
    return out


def _par_leq(a, b):
    if sum(a) != sum(b) or len(a) != len(b):
        return False
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def dominance_leq(lam, mu, order="bipar"):
    """lam <= mu in the dominance order ``par``, ``bipar`` or ``tri``."""
    if order == "par":
        return _par_leq(tuple(lam), tuple(mu))
    if lam.r != mu.r:
        raise ValueError("rank mismatch")
    if order == "tri":
        return _par_leq(lam.minus, mu.minus) and _par_leq(lam.plus, mu.plus)
    if order != "bipar":
        raise ValueError(f"unknown order {order!r}")
    if lam.size != mu.size:
        return False
    r = lam.r
    sa = sb = 0
    for j in range(r + 1):
        sa += lam.row(-j)
        sb += mu.row(-j)
        if sa > sb:
            return False
    sa, sb = sum(lam.minus), sum(mu.minus)
    for j in range(1, r + 1):
        sa += lam.row(j)
        sb += mu.row(j)
        if sa > sb:
            return False
    return True


@dataclass(frozen=True, order=True)
class WeightJ:
    """Integer coordinates over delta_1, ..., delta_r."""

    coords: tuple

    def __add__(self, other):
        return WeightJ(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return WeightJ(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"

    def gamma_coords(self):
        """Rational coordinates over gamma_1, ..., gamma_r."""
        return _solve_gamma(len(self.coords), self.coords)

    def leq(self, other):
        """self <=j other iff other - self is a nonnegative integer
        combination of the gamma_i."""
        c = (other - self).gamma_coords()
        return all(x.denominator == 1 and x >= 0 for x in c)


def _pair_beta(i, m):
    """(beta_i, epsilon_m)."""
    # beta_i = eps_{i-1} - eps_i - eps_{-i} + eps_{-i+1}
    v = 0
    v += (m == i - 1) + (m == -i + 1)
    v -= (m == i) + (m == -i)
    return v


@lru_cache(maxsize=None)
def gamma(r):
    """gamma_i in delta coordinates: entry [i-1][j-1] = (beta_j, alpha_{i-1/2})."""
    rows = []
    for i in range(1, r + 1):
        # alpha_{i-1/2} = eps_{i-1} - eps_i
        rows.append(tuple(_pair_beta(j, i - 1) - _pair_beta(j, i) for j in range(1, r + 1)))
    return tuple(rows)


def _solve_gamma(r, coords):
    # solve sum_i c_i gamma_i = coords by Gaussian elimination over Q
    g = gamma(r)
    a = [[Fraction(g[i][j]) for i in range(r)] + [Fraction(coords[j])] for j in range(r)]
    for col in range(r):
        piv = next(k for k in range(col, r) if a[k][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for k in range(r):
            if k != col and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[col])]
    return tuple(a[k][r] for k in range(r))


def wtj(lam: Bipartition) -> WeightJ:
    r = lam.r
    return WeightJ(tuple(lam.row(i - 1) - lam.row(i) + lam.row(-(i - 1)) - lam.row(-i)
                         for i in range(1, r + 1)))


def composition_wtj(comp) -> WeightJ:
    """k-weight of a tensor vector whose letters have |.|-content ``comp``."""
    comp = tuple(comp)
    r = len(comp) - 1
    out = [2 * comp[0] - comp[1]]
    out += [comp[i - 1] - comp[i] for i in range(2, r + 1)]
    return WeightJ(tuple(out))


def content_count(T: Bitableau, letter):
    return sum(1 for x in T.entries() if x == letter)


def sst_composition(T: Bitableau):
    """(#0, #(-1) + #1, ..., #(-r) + #r)."""
    r = T.r
    c = [0] * (r + 1)
    for x in T.entries():
        c[abs(x)] += 1
    return tuple(c)


def sst_wtj(T: Bitableau) -> WeightJ:
    return composition_wtj(sst_composition(T))


def _contains(lam, mu):
    return all(a >= b for a, b in zip(lam, mu))


def horizontal_strip(lam, mu):
    """Is lam/mu a horizontal strip?  Partitions or bipartitions."""
    if isinstance(lam, Bipartition):
        m_minus = tuple(mu.minus) + (0,) * (len(lam.minus) - len(mu.minus))
        m_plus = tuple(mu.plus) + (0,) * (len(lam.plus) - len(mu.plus))
        return horizontal_strip(lam.minus, m_minus) and horizontal_strip(lam.plus, m_plus)
    lam, mu = tuple(lam), tuple(mu) + (0,) * (len(lam) - len(mu))
    if not _contains(lam, mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    return all(lam[k + 1] <= mu[k] for k in range(len(lam) - 1))


def downarrow(x, i):
    """Restriction to rank i of a bipartition or an SST."""
    if isinstance(x, Bipartition):
        if not 1 <= i <= x.r:
            raise ValueError("index out of range")
        return Bipartition(x.minus[:i + 1], x.plus[:i])
    if not 1 <= i <= x.r:
        raise ValueError("index out of range")
    tm = tuple(tuple(e for e in row if e >= -i) for row in x.tminus[:i + 1])
    tp = tuple(tuple(e for e in row if e <= i) for row in x.tplus[:i])
    return Bitableau(tm, tp)


def t_lambda(lam: Bipartition) -> Bitableau:
    r = lam.r
    tm = tuple(tuple([-k] * lam.minus[k]) for k in range(r + 1))
    tp = tuple(tuple([j] * lam.plus[j - 1]) for j in range(1, r + 1))
    return Bitableau(tm, tp)


def e_r_set(lam: Bipartition):
    """E_r(lam): mu of rank r-1 with mu^- = lam^- restricted and lam^+/mu^+
    a horizontal strip."""
    r = lam.r
    if r < 2:
        raise ValueError("E_r needs r >= 2")
    minus = lam.minus[:r]
    ranges = [range(lam.plus[j + 1], lam.plus[j] + 1) for j in range(r - 1)]
    out = []

    def rec(j, acc):
        if j == r - 1:
            out.append(Bipartition(minus, tuple(acc)))
            return
        for x in ranges[j]:
            if acc and x > acc[-1]:
                continue
            rec(j + 1, acc + [x])
    rec(0, [])
    return sorted(out, reverse=True)


def shift_equivalent(lam: Bipartition, mu: Bipartition):
    """Do the rows of lam and mu differ by a constant?"""
    if lam.r != mu.r:
        return False
    diffs = {lam.row(i) - mu.row(i) for i in range(-lam.r, lam.r + 1)}
    return len(diffs) == 1
