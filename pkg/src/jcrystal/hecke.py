"""The two-parameter Hecke algebra of W(B_d).

H has basis {H_w} with (H_s - q_s^-1)(H_s + q_s) = 0, q_{s_0} = p and
q_{s_i} = q for i > 0.  Elements are stored as dicts from element index
(see ``WeylB``) to ``LaurentPoly``.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .ring import LaurentPoly, ONE, ZERO, P, Q
from .weyl_b import WeylB, weyl_group

__all__ = ["HeckeAlgebra", "HeckeElt", "hecke_algebra"]


class HeckeElt:
    """A finitely supported map W -> LaurentPoly; immutable by convention."""

    __slots__ = ("H", "c")

    def __init__(self, H, coeffs=None):
        self.H = H
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def _raw(cls, H, c):
        obj = cls.__new__(cls)
        obj.H = H
        obj.c = c
        return obj

    def __getitem__(self, w):
        return self.c.get(self.H.W.idx(w), ZERO)

    def items(self):
        return self.c.items()

    def support(self):
        return sorted(self.c)

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        if not isinstance(other, HeckeElt):
            other = self.H.scalar(other)
        return HeckeElt._raw(self.H, _addto(dict(self.c), other.c, None))

    __radd__ = __add__

    def __neg__(self):
        return HeckeElt._raw(self.H, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, HeckeElt):
            other = self.H.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.H.mul(self, other)
        if not other:
            return HeckeElt._raw(self.H, {})
        return HeckeElt._raw(self.H, {k: v * other for k, v in self.c.items() if v * other})

    def __rmul__(self, other):
        if isinstance(other, HeckeElt):
            return self.H.mul(other, self)
        if not other:
            return HeckeElt._raw(self.H, {})
        return HeckeElt._raw(self.H, {k: other * v for k, v in self.c.items()})

    def __eq__(self, other):
        if isinstance(other, HeckeElt):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def bar(self):
        return self.H.bar(self)

    def __str__(self):
        if not self.c:
            return "0"
        W = self.H.W
        return " + ".join(f"({v.pretty()})*H{W.format(k)}" for k, v in sorted(self.c.items()))

    __repr__ = __str__

    def to_json(self):
        W = self.H.W
        items = sorted(self.c.items(), key=lambda kv: (W.length(kv[0]), W.elt(kv[0]).window))
        return {"terms": [{"c": v.to_json(), "w": list(W.elt(k).window)} for k, v in items]}


def _addto(target, src, scale):
    """target += scale * src (dict form, in place)."""
    for k, v in src.items():
        if scale is not None:
            v = v * scale
        s = target.get(k)
        s = v if s is None else s + v
        if s:
            target[k] = s
        else:
            target.pop(k, None)
    return target


class HeckeAlgebra:
    """H(W_d) over Z[p^{+-1}, q^{+-1}]."""

    def __init__(self, d: int):
        self.d = d
        self.W: WeylB = weyl_group(d)
        self.qs = [P if s == 0 else Q for s in self.W.gens]
        self.qs_inv = [q ** -1 for q in self.qs]
        self.quad = [self.qs_inv[s] - self.qs[s] for s in self.W.gens]
        self._bar_basis = {}

    # -- constructors -------------------------------------------------
    def basis(self, w) -> HeckeElt:
        return HeckeElt._raw(self, {self.W.idx(w): ONE})

    def scalar(self, c) -> HeckeElt:
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        return HeckeElt._raw(self, {0: c} if c else {})

    def one(self) -> HeckeElt:
        return self.basis(0)

    def zero(self) -> HeckeElt:
        return HeckeElt._raw(self, {})

    def gen(self, s) -> HeckeElt:
        return self.basis(self.W.rmul[0][s])

    def elt(self, coeffs) -> HeckeElt:
        return HeckeElt(self, {self.W.idx(k): v for k, v in coeffs.items()})

    # -- multiplication -----------------------------------------------
    def rmul_gen(self, a: dict, s: int) -> dict:
        """(sum a_w H_w) * H_s, dict form."""
        W = self.W
        out = {}
        quad = self.quad[s]
        for w, c in a.items():
            ws = W.rmul[w][s]
            _acc(out, ws, c)
            if W._len[ws] < W._len[w]:
                _acc(out, w, c * quad)
        return out

    def lmul_gen(self, s: int, a: dict) -> dict:
        """H_s * (sum a_w H_w), dict form."""
        W = self.W
        out = {}
        quad = self.quad[s]
        for w, c in a.items():
            sw = W.lmul[w][s]
            _acc(out, sw, c)
            if W._len[sw] < W._len[w]:
                _acc(out, w, c * quad)
        return out

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        out = {}
        W = self.W
        for w, c in b.c.items():
            x = a.c
            for s in W._word[w]:
                x = self.rmul_gen(x, s)
            _addto(out, x, c)
        return HeckeElt._raw(self, out)

    def rmul_word(self, a: HeckeElt, word) -> HeckeElt:
        x = a.c
        for s in word:
            x = self.rmul_gen(x, s)
        return HeckeElt._raw(self, x)

    def lmul_word(self, word, a: HeckeElt) -> HeckeElt:
        x = a.c
        for s in reversed(word):
            x = self.lmul_gen(s, x)
        return HeckeElt._raw(self, x)

    # -- involutions --------------------------------------------------
    def bar_basis(self, w: int) -> dict:
        """bar(H_w) = sum_y r_{y,w} H_y, by bar(H_w) = bar(H_{w'}) bar(H_s)."""
        w = self.W.idx(w)
        hit = self._bar_basis.get(w)
        if hit is not None:
            return hit
        if w == 0:
            res = {0: ONE}
        else:
            s = self.W._word[w][-1]
            wp = self.W.rmul[w][s]
            prev = self.bar_basis(wp)
            # bar(H_s) = H_s + (q_s - q_s^-1)
            res = self.rmul_gen(prev, s)
            _addto(res, prev, self.qs[s] - self.qs_inv[s])
        self._bar_basis[w] = res
        return res

    def r_polynomials(self, w) -> dict:
        """{y: r_{y,w}} with r_{w,w} = 1 and support in the Bruhat interval (asserted)."""
        w = self.W.idx(w)
        r = self.bar_basis(w)
        if r.get(w) != ONE:
            raise AssertionError("r_{w,w} != 1")
        for y in r:
            if not self.W.bruhat_leq(y, w):
                raise AssertionError("r_{y,w} nonzero off the Bruhat interval")
        return dict(r)

    def bar(self, a: HeckeElt) -> HeckeElt:
        out = {}
        for w, c in a.c.items():
            _addto(out, self.bar_basis(w), c.bar())
        return HeckeElt._raw(self, out)

    def sgn(self, a: HeckeElt) -> HeckeElt:
        W = self.W
        return HeckeElt._raw(self, {w: (c.bar() if W._len[w] % 2 == 0 else -c.bar())
                                    for w, c in a.c.items()})

    def flat(self, a: HeckeElt) -> HeckeElt:
        inv = self.W._inv
        return HeckeElt._raw(self, {inv[w]: c for w, c in a.c.items()})

    # -- parabolic elements -------------------------------------------
    @lru_cache(maxsize=None)
    def _x_J(self, J):
        W = self.W
        wJ = W.longest_in(J)
        qJ = W.q_w(wJ)
        return HeckeElt._raw(self, {w: qJ * W.q_w(w) ** -1 for w in W.parabolic(J)})

    def x_J(self, J) -> HeckeElt:
        """x_J = q_{w_J} sum_{w in W_J} q_w^-1 H_w."""
        return self._x_J(frozenset(J))

    @lru_cache(maxsize=None)
    def _P_J(self, J):
        W = self.W
        qJ = W.q_w(W.longest_in(J))
        s = ZERO
        for x in W.parabolic(J):
            s = s + W.q_w(x) ** -2
        return qJ * s

    def P_J(self, J) -> LaurentPoly:
        """P_J = q_{w_J} sum_{x in W_J} q_x^-2."""
        return self._P_J(frozenset(J))

    def xj_coords(self, J, h: HeckeElt) -> dict:
        """Coordinates of h in the basis x_J H_y (y in ^J W); membership asserted."""
        J = frozenset(J)
        W = self.W
        wJ = W.longest_in(J)
        coords = {}
        for y in W.min_coset_reps(J):
            c = h.c.get(W.mul(wJ, y))
            if c:
                coords[y] = c
        if self.from_xj_coords(J, coords) != h:
            raise ValueError("element is not in x_J H")
        return coords

    def from_xj_coords(self, J, coords: dict) -> HeckeElt:
        """sum_y a_y x_J H_y for y in ^J W (lengths add, so no products needed)."""
        J = frozenset(J)
        W = self.W
        xJ = self.x_J(J)
        out = {}
        for y, a in coords.items():
            for u, c in xJ.c.items():
                _acc(out, W.mul(u, y), c * a)
        return HeckeElt._raw(self, out)

    def dumps(self, a: HeckeElt) -> str:
        return json.dumps(a.to_json(), sort_keys=True, separators=(",", ":"))


def _acc(out, k, v):
    s = out.get(k)
    s = v if s is None else s + v
    if s:
        out[k] = s
    else:
        out.pop(k, None)


@lru_cache(maxsize=None)
def hecke_algebra(d: int) -> HeckeAlgebra:
    return HeckeAlgebra(d)
