"""Exact arithmetic in Z[p^{+-1}, q^{+-1}] and Q(p, q).

``LaurentPoly`` stores a sparse map ``(a, b) -> c`` for the monomial
``c * p^a q^b``.  ``RationalFn`` is a reduced quotient of two such
polynomials.  Both support the bar involution ``p, q -> p^-1, q^-1``.

The local ring ``A0`` is handled through the lexicographic valuation
``v(x) = (p-adic order, q-adic order of the lowest p-coefficient)``:
``x`` lies in ``A0`` iff ``v(x) >= (0, 0)`` and in ``qA0`` iff
``v(x) >= (0, 1)``.  This is the same as expanding ``x`` as a power
series in ``p`` over ``Q(q)`` and asking the constant coefficient to be
regular at ``q = 0``.

>>> x = (P**2 * Q**-1 + 3).bar()
>>> str(x)
'1 * p^-2 q^1 + 3 * p^0 q^0'
>>> q_integer(2) == Q + Q**-1
True
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "P",
    "Q",
    "ONE",
    "ZERO",
    "as_rf",
    "bar",
    "decompose",
    "lattice_membership",
    "valuation",
    "a0_test",
    "in_A0",
    "in_qA0",
    "value_at_origin",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "laurent_gcd",
]


def _c(x):
    """Normalize a coefficient: Fractions with denominator 1 become ints."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"unsupported coefficient {x!r}")


class LaurentPoly:
    """Element of Q[p^{+-1}, q^{+-1}]; immutable.

    No zero coefficient is ever stored.
    """

    __slots__ = ("t", "_h")

    def __init__(self, terms=None):
        if terms is None:
            self.t = {}
        elif isinstance(terms, dict):
            self.t = {k: _c(v) for k, v in terms.items() if v != 0}
        else:
            t = {}
            for (a, b), c in terms:
                t[(a, b)] = t.get((a, b), 0) + c
            self.t = {k: _c(v) for k, v in t.items() if v != 0}
        self._h = None

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj.t = t
        obj._h = None
        return obj

    @classmethod
    def const(cls, c):
        c = _c(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def mono(cls, a, b, c=1):
        c = _c(c)
        return cls._raw({(a, b): c} if c else {})

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def is_one(self):
        return len(self.t) == 1 and self.t.get((0, 0)) == 1

    def is_monomial(self):
        return len(self.t) == 1

    def is_constant(self):
        return not self.t or (len(self.t) == 1 and (0, 0) in self.t)

    def is_integral(self):
        return all(type(c) is int for c in self.t.values())

    def constant_term(self):
        return self.t.get((0, 0), 0)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.t:
            return self
        if not self.t:
            return o
        t = dict(self.t)
        for k, v in o.t.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = _c(s) if type(s) is not int else s
            else:
                t.pop(k, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self.t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _c(other)
            if not other:
                return ZERO
            return LaurentPoly._raw({k: _c(v * other) for k, v in self.t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        st, ot = self.t, other.t
        if not st or not ot:
            return ZERO
        if len(ot) == 1:
            ((a2, b2), c2), = ot.items()
            return LaurentPoly._raw({(a + a2, b + b2): _c(c * c2) for (a, b), c in st.items()})
        if len(st) == 1:
            return other * self
        t = {}
        for (a1, b1), c1 in st.items():
            for (a2, b2), c2 in ot.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: _c(v) for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((a, b), c), = self.t.items()
            return LaurentPoly.mono(-a * (-n), -b * (-n), Fraction(1, 1) / Fraction(c) ** (-n))
        r = ONE
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                return self * other ** -1
            return RationalFn(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.t == other.t
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.t
            return len(self.t) == 1 and self.t.get((0, 0)) == other
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            if self.is_constant():
                self._h = hash(self.constant_term())
            else:
                self._h = hash(frozenset(self.t.items()))
        return self._h

    # -- structure ----------------------------------------------------
    def bar(self):
        return LaurentPoly._raw({(-a, -b): c for (a, b), c in self.t.items()})

    def subs_pq(self, p, q):
        """Evaluate at numbers ``p``, ``q`` (exact)."""
        s = Fraction(0)
        for (a, b), c in self.t.items():
            s += c * Fraction(p) ** a * Fraction(q) ** b
        return _c(s)

    def min_exponents(self):
        return (min(a for a, _ in self.t), min(b for _, b in self.t))

    def lowest_term(self):
        """The lex-least monomial ``((a, b), c)``: minimal p-power, then q-power."""
        k = min(self.t)
        return k, self.t[k]

    def exact_div(self, other):
        """Quotient in the Laurent ring; raises ``ArithmeticError`` if inexact."""
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_monomial():
            return self * other ** -1
        if self.is_zero():
            return ZERO
        (a0, b0) = self.min_exponents()
        (a1, b1) = other.min_exponents()
        num = {(a - a0, b - b0): c for (a, b), c in self.t.items()}
        den = {(a - a1, b - b1): c for (a, b), c in other.t.items()}
        quo, rem = _poly_divmod(num, den)
        if rem:
            raise ArithmeticError("inexact division of Laurent polynomials")
        return LaurentPoly._raw({(a + a0 - a1, b + b0 - b1): _c(c) for (a, b), c in quo.items()})

    def sorted_terms(self):
        return sorted(self.t.items())

    # -- serialization ------------------------------------------------
    def __str__(self):
        if not self.t:
            return "0"
        return " + ".join(f"{c} * p^{a} q^{b}" for (a, b), c in self.sorted_terms())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def pretty(self):
        """Compact human-readable form, e.g. ``p^2*q^-1 + 3``."""
        if not self.t:
            return "0"
        out = []
        for (a, b), c in sorted(self.t.items(), reverse=True):
            mon = "*".join(
                s for s in ((f"p^{a}" if a not in (0, 1) else "p" if a == 1 else ""),
                            (f"q^{b}" if b not in (0, 1) else "q" if b == 1 else "")) if s)
            if not mon:
                out.append(str(c))
            elif c == 1:
                out.append(mon)
            elif c == -1:
                out.append("-" + mon)
            else:
                out.append(f"{c}*{mon}")
        return " + ".join(out).replace("+ -", "- ")

    @classmethod
    def parse(cls, s):
        s = s.strip()
        if s == "0":
            return ZERO
        t = {}
        for part in s.split(" + "):
            m = re.fullmatch(r"(-?\d+(?:/\d+)?) \* p\^(-?\d+) q\^(-?\d+)", part.strip())
            if not m:
                raise ValueError(f"cannot parse term {part!r}")
            t[(int(m.group(2)), int(m.group(3)))] = Fraction(m.group(1))
        return cls(t)

    def to_json(self):
        return [[a, b, f"{Fraction(c).numerator}/{Fraction(c).denominator}"]
                for (a, b), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        return cls({(int(a), int(b)): Fraction(c) for a, b, c in data})

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({(0, 0): 1})
P = LaurentPoly._raw({(1, 0): 1})
Q = LaurentPoly._raw({(0, 1): 1})


# ---------------------------------------------------------------------------
# polynomial helpers (nonnegative exponents, dict form)

def _poly_divmod(num, den):
    """Multivariate division of dict-polynomials, lex order with p first.

    Exact whenever ``den`` divides ``num``; the remainder is returned so the
    caller can assert exactness.
    """
    lead = max(den)
    lc = Fraction(den[lead])
    rem = {k: Fraction(v) for k, v in num.items()}
    quo = {}
    while rem:
        k = max(rem)
        if k[0] < lead[0] or k[1] < lead[1]:
            # leading term not divisible: move it aside as remainder
            return quo, rem
        c = rem[k] / lc
        sh = (k[0] - lead[0], k[1] - lead[1])
        quo[sh] = c
        for (a, b), v in den.items():
            kk = (a + sh[0], b + sh[1])
            nv = rem.get(kk, 0) - c * v
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
    return quo, rem


_SYMPY_RING = None


def _sympy_ring():
    global _SYMPY_RING
    if _SYMPY_RING is None:
        from sympy.polys.domains import QQ
        from sympy.polys.rings import ring
        R, _p, _q = ring("p,q", QQ)
        _SYMPY_RING = R
    return _SYMPY_RING


def _poly_gcd(f, g):
    """gcd of two dict-polynomials in Q[p, q] (monic up to a rational)."""
    R = _sympy_ring()
    F = R.from_dict({k: v for k, v in f.items()})
    G = R.from_dict({k: v for k, v in g.items()})
    H = F.gcd(G)
    return {tuple(k): Fraction(int(v.numerator), int(v.denominator)) for k, v in H.items()}


# ---------------------------------------------------------------------------

class RationalFn:
    """Element of Q(p, q) stored as a reduced pair of Laurent polynomials.

    The denominator is normalized to a polynomial not divisible by p or q,
    with coprime integer coefficients and a positive coefficient at its
    lexicographically least exponent.  Equality is by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if den is None:
            den = ONE
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        self.num, self.den = _reduce(num, den)

    def is_laurent(self):
        return self.den.is_one()

    def to_laurent(self):
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn(other, ONE, _reduced=True)
        if isinstance(other, (int, Fraction)):
            return RationalFn(LaurentPoly.const(other), ONE, _reduced=True)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFn(self.num + o.num, ONE, _reduced=True)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFn(self.num * o.num, ONE, _reduced=True)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = RationalFn(ONE, ONE, _reduced=True)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def bar(self):
        return RationalFn(self.num.bar(), self.den.bar())

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"

    def pretty(self):
        if self.den.is_one():
            return self.num.pretty()
        return f"({self.num.pretty()})/({self.den.pretty()})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _reduce(num, den):
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        return num * den ** -1, ONE
    a1, b1 = den.min_exponents()
    dpol = {(a - a1, b - b1): c for (a, b), c in den.t.items()}
    a0, b0 = num.min_exponents()
    npol = {(a - a0, b - b0): c for (a, b), c in num.t.items()}
    shift = (a0 - a1, b0 - b1)
    g = _poly_gcd(npol, dpol)
    if len(g) > 1:
        npol, r1 = _poly_divmod(npol, g)
        dpol, r2 = _poly_divmod(dpol, g)
        assert not r1 and not r2
        am, bm = min(a for a, _ in dpol), min(b for _, b in dpol)
        if am or bm:
            dpol = {(a - am, b - bm): c for (a, b), c in dpol.items()}
            shift = (shift[0] + am, shift[1] + bm)
    # unit normalization of the denominator
    lcm = 1
    for c in dpol.values():
        lcm = lcm * Fraction(c).denominator // igcd(lcm, Fraction(c).denominator)
    ints = [int(Fraction(c) * lcm) for c in dpol.values()]
    g = 0
    for c in ints:
        g = igcd(g, c)
    scale = Fraction(lcm, g)
    if dpol[min(dpol)] * scale < 0:
        scale = -scale
    if len(dpol) == 1:
        ((a, b), c), = dpol.items()
        n = LaurentPoly._raw({(x + shift[0] - a, y + shift[1] - b): _c(Fraction(v) / c)
                              for (x, y), v in npol.items()})
        return n, ONE
    d = LaurentPoly._raw({k: _c(Fraction(v) * scale) for k, v in dpol.items()})
    n = LaurentPoly._raw({(x + shift[0], y + shift[1]): _c(Fraction(v) * scale)
                          for (x, y), v in npol.items()})
    return n, d


def as_rf(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn(x, ONE, _reduced=True)
    return RationalFn(LaurentPoly.const(x), ONE, _reduced=True)


def bar(x):
    """Bar involution on scalars."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.bar()


# ---------------------------------------------------------------------------
# lattices

def decompose(x, integral=True):
    """Split ``x = x_minus + x_zero + x_plus`` by monomial position.

    ``x_plus`` collects monomials p^a q^b with a > 0, or a = 0 and b > 0;
    ``x_zero`` is the constant term; ``x_minus`` is the rest.  With
    ``integral=True`` the coefficients must be integers.
    """
    if isinstance(x, RationalFn):
        x = x.to_laurent()
    if integral and not x.is_integral():
        raise ValueError("decomposition over Z needs integer coefficients")
    plus, minus = {}, {}
    zero = 0
    for (a, b), c in x.t.items():
        if a > 0 or (a == 0 and b > 0):
            plus[(a, b)] = c
        elif a == 0 and b == 0:
            zero = c
        else:
            minus[(a, b)] = c
    return LaurentPoly._raw(minus), zero, LaurentPoly._raw(plus)


def lattice_membership(x, which):
    """Is ``x`` in ``AZplus``, ``AZminus`` or ``Z``?"""
    minus, zero, plus = decompose(x)
    if which == "AZplus":
        return not minus and not zero
    if which == "AZminus":
        return not plus and not zero
    if which == "Z":
        return not minus and not plus
    raise ValueError(f"unknown lattice {which!r}")


def valuation(x):
    """Lex valuation ``((a, b), c)``: lowest p-power a, lowest q-power b of the
    p^a-coefficient, and the rational leading coefficient c.  ``None`` for 0."""
    if isinstance(x, (int, Fraction)):
        return None if x == 0 else ((0, 0), Fraction(x))
    if isinstance(x, LaurentPoly):
        if x.is_zero():
            return None
        k, c = x.lowest_term()
        return k, Fraction(c)
    if x.num.is_zero():
        return None
    (kn, cn), (kd, cd) = x.num.lowest_term(), x.den.lowest_term()
    return (kn[0] - kd[0], kn[1] - kd[1]), Fraction(cn) / Fraction(cd)


def a0_test(x):
    """Return ``(in_A0, in_qA0, value_at_origin)``; the value is ``None``
    outside A0."""
    v = valuation(x)
    if v is None:
        return True, True, 0
    (a, b), c = v
    if a < 0 or (a == 0 and b < 0):
        return False, False, None
    if a == 0 and b == 0:
        return True, False, _c(c)
    return True, True, 0


def in_A0(x):
    return a0_test(x)[0]


def in_qA0(x):
    return a0_test(x)[1]


def value_at_origin(x):
    ok, _, val = a0_test(x)
    if not ok:
        raise ValueError(f"{x} is not in A0")
    return val


# ---------------------------------------------------------------------------
# quantum numbers

@lru_cache(maxsize=None)
def q_integer(n):
    """[n] = (q^n - q^-n)/(q - q^-1); [-n] = -[n]."""
    if n < 0:
        return -q_integer(-n)
    return LaurentPoly._raw({(0, n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n):
    if n < 0:
        raise ValueError("negative factorial")
    r = ONE
    for k in range(1, n + 1):
        r = r * q_integer(k)
    return r


@lru_cache(maxsize=None)
def q_binomial(m, k):
    if k < 0 or k > m or m < 0:
        return ZERO
    return q_factorial(m).exact_div(q_factorial(k) * q_factorial(m - k))


def _uz_gcd(f, g):
    """gcd over Z[q] of integer coefficient lists (index = degree)."""
    R = _sympy_zring()
    F = R.from_dict({(i,): c for i, c in enumerate(f) if c})
    G = R.from_dict({(i,): c for i, c in enumerate(g) if c})
    H = F.gcd(G)
    out = [0] * (H.degree() + 1 if H else 1)
    for (i,), c in H.items():
        out[i] = int(c)
    return out


_SYMPY_ZRING = None


def _sympy_zring():
    global _SYMPY_ZRING
    if _SYMPY_ZRING is None:
        from sympy.polys.domains import ZZ
        from sympy.polys.rings import ring
        R, _q = ring("q", ZZ)
        _SYMPY_ZRING = R
    return _SYMPY_ZRING


def laurent_gcd(xs):
    """gcd in Z[q^{+-1}] of integer Laurent polynomials in q alone.

    Normalized so that the lowest exponent is 0 and the leading (top)
    coefficient is positive.
    """
    xs = list(xs)
    if not xs:
        raise ValueError("gcd of an empty list")
    lists = []
    for x in xs:
        if x.is_zero():
            raise ValueError("gcd of zero")
        if not x.is_integral() or any(a != 0 for a, _ in x.t):
            raise ValueError("laurent_gcd needs integer polynomials in q")
        m = min(b for _, b in x.t)
        deg = max(b for _, b in x.t) - m
        lst = [0] * (deg + 1)
        for (_, b), c in x.t.items():
            lst[b - m] = c
        lists.append(lst)
    g = lists[0]
    for lst in lists[1:]:
        g = _uz_gcd(g, lst)
    while g and g[-1] == 0:
        g.pop()
    if g[-1] < 0:
        g = [-c for c in g]
    return LaurentPoly({(0, i): c for i, c in enumerate(g) if c})
