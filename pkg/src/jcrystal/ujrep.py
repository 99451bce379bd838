"""V^{tensor d} as a (U^j, H)-bimodule.

V has basis v_{-r}, ..., v_r.  For a half-integer h the U-generators act by
E_h v_m = [m = h+1/2] v_{h-1/2}, F_h v_m = [m = h-1/2] v_{h+1/2} and
K_h v_m = q^{[m = h-1/2] - [m = h+1/2]} v_m, and on tensors through the
iterated coproduct.  Half-integers are passed doubled (h2 = 2h, odd).

The coideal generators are e_i = E_{i-1/2} + p^{-[i=1]} F_{1/2-i} K_{i-1/2}^-1,
f_i = E_{1/2-i} + p^{[i=1]} K_{1/2-i}^-1 F_{i-1/2} and
k_i = K_{i-1/2} K_{1/2-i}^-1, which acts on v_m by q^{(beta_i, eps_m)}.

>>> V = TensorSpace(1, 1)
>>> V.uj("f", 1, V.basis_vector((0,)))
TensorVector({(-1,): 1, (1,): p})
>>> V.uj("k", 1, V.basis_vector((1,)))
TensorVector({(1,): q^-1})
>>> V.hecke_gen(V.basis_vector((-1,)), 0)
TensorVector({(-1,): -p + p^-1, (1,): 1})
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .bipartition import _pair_beta
from .hecke import HeckeElt, hecke_algebra
from .ring import LaurentPoly, ONE, ZERO, P, Q, RationalFn, q_factorial, q_integer
from .schur import SchurAlgebra, TElt, compositions, schur_algebra

__all__ = [
    "TensorVector",
    "TensorSpace",
    "tensor_space",
    "UjExpr",
    "gen",
    "apply_automorphism",
    "xi_of_generators",
    "check_surjection_formulas",
    "check_relations",
    "check_commutation",
    "check_divided_power_identity",
    "beta_pairing",
]


def _div(c, n):
    """c / n in the Laurent ring when exact, otherwise in Q(p, q)."""
    if isinstance(c, LaurentPoly):
        try:
            return c.exact_div(n)
        except ArithmeticError:
            return RationalFn(c, n)
    return c / n


def _coef_str(c):
    if isinstance(c, LaurentPoly):
        s = c.pretty()
    else:
        s = c.pretty()
    return s


class TensorVector:
    """Finitely supported map from index words to scalars."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorVector._raw(out)

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj.c = c
        return obj

    def __neg__(self):
        return TensorVector._raw({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        if not a:
            return TensorVector._raw({})
        out = {}
        for k, v in self.c.items():
            x = v * a
            if x:
                out[k] = x
        return TensorVector._raw(out)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        a, b = self.c, other.c
        return set(a) == set(b) and all(a[k] == b[k] for k in a)

    def __bool__(self):
        return bool(self.c)

    def items(self):
        return self.c.items()

    def __repr__(self):
        body = ", ".join(f"{k}: {_coef_str(v)}" for k, v in sorted(self.c.items()))
        return "TensorVector({" + body + "})"


def beta_pairing(i, m):
    """(beta_i, eps_m): the exponent of k_i on the letter m."""
    return _pair_beta(i, m)


def _kappa(h2, m):
    """Exponent of K_h on v_m, with h2 = 2h."""
    return (2 * m == h2 - 1) - (2 * m == h2 + 1)


class TensorSpace:
    """V^{tensor d} for V of dimension 2r + 1."""

    def __init__(self, r, d):
        self.r = r
        self.d = d
        letters = range(-r, r + 1)
        self.words = sorted(product(letters, repeat=d))
        self.index = {w: i for i, w in enumerate(self.words)}
        self.H = hecke_algebra(d)
        self._iso = None

    def __len__(self):
        return len(self.words)

    def basis_vector(self, word) -> TensorVector:
        return TensorVector._raw({tuple(word): ONE})

    # -- U-action ------------------------------------------------------
    def E(self, h2, v: TensorVector, power=1) -> TensorVector:
        for _ in range(power):
            out = {}
            for w, c in v.c.items():
                for j, m in enumerate(w):
                    if 2 * m != h2 + 1:
                        continue
                    e = -sum(_kappa(h2, x) for x in w[j + 1:])
                    u = w[:j] + ((h2 - 1) // 2,) + w[j + 1:]
                    _acc(out, u, c * Q ** e)
            v = TensorVector._raw(out)
        return v

    def F(self, h2, v: TensorVector, power=1) -> TensorVector:
        for _ in range(power):
            out = {}
            for w, c in v.c.items():
                for j, m in enumerate(w):
                    if 2 * m != h2 - 1:
                        continue
                    e = sum(_kappa(h2, x) for x in w[:j])
                    u = w[:j] + ((h2 + 1) // 2,) + w[j + 1:]
                    _acc(out, u, c * Q ** e)
            v = TensorVector._raw(out)
        return v

    def K(self, h2, v: TensorVector, power=1) -> TensorVector:
        out = {}
        for w, c in v.c.items():
            e = power * sum(_kappa(h2, x) for x in w)
            out[w] = c * Q ** e
        return TensorVector._raw(out)

    def u_action(self, name, h2, v, power=1):
        if name == "E":
            return self.E(h2, v, power)
        if name == "F":
            return self.F(h2, v, power)
        if name == "K":
            return self.K(h2, v, power)
        raise ValueError(f"unknown U generator {name!r}")

    # -- U^j action ----------------------------------------------------
    def k_exponent(self, i, word):
        return sum(_pair_beta(i, m) for m in word)

    def uj(self, name, i, v: TensorVector, n=1) -> TensorVector:
        """e_i^{(n)}, f_i^{(n)} or k_i^n applied to v."""
        if not 1 <= i <= self.r:
            raise ValueError("generator index out of range")
        if name == "k":
            return TensorVector._raw({w: c * Q ** (n * self.k_exponent(i, w)) for w, c in v.c.items()})
        if n < 0:
            raise ValueError("divided powers need n >= 0")
        up, dn = 2 * i - 1, 1 - 2 * i
        delta = 1 if i == 1 else 0
        for _ in range(n):
            if name == "e":
                v = self.E(up, v) + self.F(dn, self.K(up, v, -1)).scale(P ** -delta)
            elif name == "f":
                v = self.E(dn, v) + self.K(dn, self.F(up, v), -1).scale(P ** delta)
            else:
                raise ValueError(f"unknown U^j generator {name!r}")
        if n > 1:
            fac = q_factorial(n)
            v = TensorVector._raw({w: _div(c, fac) for w, c in v.c.items()})
        return v

    def apply(self, x: "UjExpr", v: TensorVector) -> TensorVector:
        out = TensorVector()
        for word, c in x.terms.items():
            u = v
            for name, i, n in reversed(word):
                u = self.uj(name, i, u, n)
            out = out + u.scale(c)
        return out

    # -- right Hecke action -------------------------------------------
    def hecke_gen(self, v: TensorVector, s) -> TensorVector:
        out = {}
        for w, c in v.c.items():
            if s == 0:
                a = w[0]
                u = (-a,) + w[1:]
                if a > 0:
                    _acc(out, u, c)
                elif a == 0:
                    _acc(out, w, c * P ** -1)
                else:
                    _acc(out, u, c)
                    _acc(out, w, c * (P ** -1 - P))
            else:
                a, b = w[s - 1], w[s]
                u = w[:s - 1] + (b, a) + w[s + 1:]
                if a < b:
                    _acc(out, u, c)
                elif a == b:
                    _acc(out, w, c * Q ** -1)
                else:
                    _acc(out, u, c)
                    _acc(out, w, c * (Q ** -1 - Q))
        return TensorVector._raw(out)

    def hecke_word(self, v, word):
        for s in word:
            v = self.hecke_gen(v, s)
        return v

    def hecke_right_action(self, v: TensorVector, h: HeckeElt) -> TensorVector:
        out = TensorVector()
        W = self.H.W
        for w, c in h.c.items():
            out = out + self.hecke_word(v, W._word[w]).scale(c)
        return out

    # -- the isomorphism with T(pi) -----------------------------------
    def schur(self) -> SchurAlgebra:
        return schur_algebra(self.r, self.d)

    @staticmethod
    def v_lambda(lam):
        return tuple(k for k, part in enumerate(lam) for _ in range(part))

    def _iso_tables(self):
        """word <-> (lambda, y): v_lambda H_y is a single basis vector."""
        if self._iso is None:
            S = self.schur()
            W = self.H.W
            to_t, from_t = {}, {}
            for lam in S.comps:
                base = self.basis_vector(self.v_lambda(lam))
                for y in S.reps[lam]:
                    img = self.hecke_word(base, W._word[y])
                    if len(img.c) != 1:
                        raise AssertionError("v_lambda H_y is not a basis vector")
                    (word, c), = img.c.items()
                    if c != ONE or word in to_t:
                        raise AssertionError("v_lambda H_y does not give a basis bijection")
                    to_t[word] = (lam, y)
                    from_t[(lam, y)] = word
            if len(to_t) != len(self.words):
                raise AssertionError("T(pi) and V^d have different dimensions")
            self._iso = (to_t, from_t)
        return self._iso

    def iso_T(self, v: TensorVector) -> TElt:
        to_t, _ = self._iso_tables()
        S = self.schur()
        coords = {}
        for w, c in v.c.items():
            lam, y = to_t[w]
            coords.setdefault(lam, {})[y] = c
        return TElt(S, {lam: self.H.from_xj_coords(S.I[lam], co) for lam, co in coords.items()}, check=False)

    def iso_T_inverse(self, t: TElt) -> TensorVector:
        _, from_t = self._iso_tables()
        S = self.schur()
        out = {}
        for lam, h in t.c.items():
            for y, c in self.H.xj_coords(S.I[lam], h).items():
                out[from_t[(lam, y)]] = c
        return TensorVector._raw(out)


def _acc(out, k, v):
    s = out.get(k)
    s = v if s is None else s + v
    if s:
        out[k] = s
    else:
        out.pop(k, None)


@lru_cache(maxsize=None)
def tensor_space(r, d) -> TensorSpace:
    return TensorSpace(r, d)


# ---------------------------------------------------------------------------
# formal expressions

class UjExpr:
    """A linear combination of words in e_i^{(n)}, f_i^{(n)}, k_i^n.

    A letter is (name, i, n); words act right to left.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def letter(cls, name, i, n=1):
        return cls({((name, i, n),): ONE})

    @classmethod
    def scalar(cls, c):
        return cls({(): c if not isinstance(c, int) else LaurentPoly.const(c)})

    def __add__(self, other):
        if not isinstance(other, UjExpr):
            other = UjExpr.scalar(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return UjExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return UjExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UjExpr):
            out = UjExpr()
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out = out + UjExpr({w1 + w2: c1 * c2})
            return out
        return UjExpr({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return UjExpr({w: other * c for w, c in self.terms.items()})

    def __pow__(self, n):
        out = UjExpr.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, UjExpr) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            body = "*".join(_letter_str(x) for x in w) or "1"
            parts.append(f"({c.pretty() if hasattr(c, 'pretty') else c})*{body}")
        return " + ".join(parts)


def _letter_str(x):
    name, i, n = x
    if name == "k":
        return f"k{i}" if n == 1 else f"k{i}^{n}"
    return f"{name}{i}" if n == 1 else f"{name}{i}^({n})"


def gen(name, i, n=1) -> UjExpr:
    return UjExpr.letter(name, i, n)


def _auto_letter(which, x):
    """Image of a single letter as a UjExpr."""
    name, i, n = x
    delta = 1 if i == 1 else 0
    if which == "psij":
        return gen("k", i, -n) if name == "k" else gen(name, i, n)
    if which == "sigmaj":
        if name == "k":
            return gen("k", i, n)
        return gen("f" if name == "e" else "e", i, n)
    if which == "tauj":
        if name == "k":
            return gen("k", i, n)
        if name == "e":
            one = (P ** -delta * Q ** -1) * (gen("k", i, -1) * gen("f", i))
        else:
            one = (P ** delta * Q) * (gen("e", i) * gen("k", i))
        img = one ** n
        if n > 1:
            img = img * RationalFn(ONE, q_factorial(n))
        return img
    raise ValueError(f"unknown automorphism {which!r}")


def apply_automorphism(which, x: UjExpr) -> UjExpr:
    """psij (semilinear automorphism), sigmaj and tauj (anti-automorphisms)."""
    out = UjExpr()
    for word, c in x.terms.items():
        if which == "psij":
            img = UjExpr.scalar(c.bar())
            for letter in word:
                img = img * _auto_letter(which, letter)
        else:
            img = UjExpr.scalar(c)
            for letter in reversed(word):
                img = img * _auto_letter(which, letter)
        out = out + img
    return out


# ---------------------------------------------------------------------------
# the surjection onto S(pi)

def xi_of_generators(S: SchurAlgebra, i, kind):
    if kind == "e":
        return S.xi_e(i)
    if kind == "f":
        return S.xi_f(i)
    if kind == "k":
        return S.xi_k(i)
    if kind == "kinv":
        return S.xi_k(i, -1)
    raise ValueError(f"unknown generator kind {kind!r}")


def xi_of_expr(S: SchurAlgebra, x: UjExpr):
    """xi of a UjExpr without divided powers, as an SElt."""
    total = S.zero()
    for word, c in x.terms.items():
        acc = S.one()
        for name, i, n in word:
            if name == "k":
                g = S.xi_k(i, 1 if n > 0 else -1)
                for _ in range(abs(n)):
                    acc = acc * g
            else:
                if n != 1:
                    raise ValueError("divided powers are not supported here")
                acc = acc * xi_of_generators(S, i, name)
        total = total + acc.scale(c)
    return total


def check_surjection_formulas(r, d):
    """Compare xi(g) on T(pi) with g on V^d through iso_T, every basis vector.

    Returns a list of failures (empty when all agree)."""
    V = tensor_space(r, d)
    S = V.schur()
    fails = []
    for i in range(1, r + 1):
        for kind in ("e", "f", "k"):
            xi = xi_of_generators(S, i, kind)
            for word in V.words:
                v = V.basis_vector(word)
                lhs = V.iso_T(V.uj(kind, i, v))
                rhs = S.act(xi, V.iso_T(v))
                if lhs != rhs:
                    fails.append((kind, i, word))
    return fails


# ---------------------------------------------------------------------------
# relation checks

def _alpha_pairing(i, j):
    """(beta_i, alpha_{j-1/2}) with alpha_{j-1/2} = eps_{j-1} - eps_j."""
    return _pair_beta(i, j - 1) - _pair_beta(i, j)


def relations(r):
    """The defining relations of U^j as (name, lhs - rhs) pairs."""
    e = lambda i: gen("e", i)
    f = lambda i: gen("f", i)
    k = lambda i, n=1: gen("k", i, n)
    qq = Q + Q ** -1
    rels = []
    I = range(1, r + 1)
    for i in I:
        rels.append((f"k{i}k{i}^-1", k(i) * k(i, -1) - 1))
        for j in I:
            a = _alpha_pairing(i, j)
            rels.append((f"k{i}k{j}", k(i) * k(j) - k(j) * k(i)))
            rels.append((f"k{i}e{j}", k(i) * e(j) * k(i, -1) - Q ** a * e(j)))
            rels.append((f"k{i}f{j}", k(i) * f(j) * k(i, -1) - Q ** -a * f(j)))
            if (i, j) != (1, 1):
                rhs = (k(i) - k(i, -1)) if i == j else UjExpr()
                rels.append((f"[e{i},f{j}]", (Q - Q ** -1) * (e(i) * f(j) - f(j) * e(i)) - rhs))
            if abs(i - j) == 1:
                rels.append((f"serre e{i}e{j}", e(i) * e(i) * e(j) - qq * (e(i) * e(j) * e(i)) + e(j) * e(i) * e(i)))
                rels.append((f"serre f{i}f{j}", f(i) * f(i) * f(j) - qq * (f(i) * f(j) * f(i)) + f(j) * f(i) * f(i)))
            if abs(i - j) > 1:
                rels.append((f"e{i}e{j}", e(i) * e(j) - e(j) * e(i)))
                rels.append((f"f{i}f{j}", f(i) * f(j) - f(j) * f(i)))
    mid = (P * Q) * k(1) + (P ** -1 * Q ** -1) * k(1, -1)
    rels.append(("serre e1f1", e(1) * e(1) * f(1) - qq * (e(1) * f(1) * e(1)) + f(1) * e(1) * e(1)
                 + qq * (e(1) * mid)))
    rels.append(("serre f1e1", f(1) * f(1) * e(1) - qq * (f(1) * e(1) * f(1)) + e(1) * f(1) * f(1)
                 + qq * (mid * f(1))))
    return rels


def check_relations(r, d):
    """Names of relations failing on some basis vector of V^d."""
    V = tensor_space(r, d)
    bad = []
    for name, rel in relations(r):
        for word in V.words:
            if V.apply(rel, V.basis_vector(word)):
                bad.append((name, word))
                break
    return bad


def check_commutation(r, d):
    """(U^j generator, H generator, word) triples where the actions fail to commute."""
    V = tensor_space(r, d)
    bad = []
    for i in range(1, r + 1):
        for kind in ("e", "f", "k"):
            for s in range(d):
                for word in V.words:
                    v = V.basis_vector(word)
                    a = V.hecke_gen(V.uj(kind, i, v), s)
                    b = V.uj(kind, i, V.hecke_gen(v, s))
                    if a != b:
                        bad.append((kind, i, s, word))
    return bad


def check_divided_power_identity(r, d, nmax=3):
    """e_i^{(n)} = sum_t q^{t(n-t)} y^{(t)} x^{(n-t)} with x = E_{i-1/2} and
    y = p^{-[i=1]} F_{1/2-i} K_{i-1/2}^-1, and xy = q^2 yx, as operators.

    y^{(t)} is computed as y^t / [t]!.  Returns a list of failures."""
    V = tensor_space(r, d)
    bad = []
    for i in range(1, r + 1):
        up, dn = 2 * i - 1, 1 - 2 * i
        delta = 1 if i == 1 else 0

        def x_op(v):
            return V.E(up, v)

        def y_op(v):
            return V.F(dn, V.K(up, v, -1)).scale(P ** -delta)

        def power(op, t, v):
            for _ in range(t):
                v = op(v)
            return TensorVector._raw({w: _div(c, q_factorial(t)) for w, c in v.c.items()}) if t > 1 else v

        for word in V.words:
            v = V.basis_vector(word)
            if x_op(y_op(v)) != y_op(x_op(v)).scale(Q ** 2):
                bad.append(("xy=q^2yx", i, word))
                continue
            for n in range(1, nmax + 1):
                lhs = V.uj("e", i, v, n)
                rhs = TensorVector()
                for t in range(n + 1):
                    rhs = rhs + power(y_op, t, power(x_op, n - t, v)).scale(Q ** (t * (n - t)))
                if lhs != rhs:
                    bad.append(("divided power", i, n, word))
    return bad
