"""The Weyl group W_d of type B_d as signed permutations.

Generators: ``s_0`` negates position 1 and ``s_i`` (1 <= i < d) swaps
positions i and i+1, acting on the right of the window.  Elements are
enumerated once per ``d`` and indexed by their position in the order
(length, lex-least reduced word); the Hecke layer works with indices.

>>> W = WeylB(2)
>>> len(W), W.length(W.longest())
(8, 4)
>>> W.word(W.longest())
(0, 1, 0, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .ring import LaurentPoly

__all__ = ["SignedPerm", "WeylB", "weyl_group", "length_formula"]


@dataclass(frozen=True, order=True)
class SignedPerm:
    """A signed permutation in one-line (window) notation."""

    window: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a signed permutation: {w}")

    @property
    def d(self):
        return len(self.window)

    def __call__(self, i):
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other):
        # (uv)(i) = u(v(i))
        return SignedPerm(tuple(self(other(i)) for i in range(1, self.d + 1)))

    def inverse(self):
        inv = [0] * self.d
        for i, x in enumerate(self.window, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPerm(tuple(inv))

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.window) + "]"

    @classmethod
    def identity(cls, d):
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def simple(cls, d, s):
        w = list(range(1, d + 1))
        if s == 0:
            w[0] = -1
        else:
            w[s - 1], w[s] = w[s], w[s - 1]
        return cls(tuple(w))


def length_formula(w: SignedPerm) -> int:
    """inv(w) + neg(w) + nsp(w), the standard type-B length."""
    v = w.window
    n = len(v)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] > v[j])
    neg = sum(1 for x in v if x < 0)
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] + v[j] < 0)
    return inv + neg + nsp


def _right_mult(window, s):
    w = list(window)
    if s == 0:
        w[0] = -w[0]
    else:
        w[s - 1], w[s] = w[s], w[s - 1]
    return tuple(w)


def _left_mult(window, s):
    # s acts on values
    if s == 0:
        return tuple(-x if abs(x) == 1 else x for x in window)

    def f(x):
        a = abs(x)
        if a == s:
            return s + 1 if x > 0 else -(s + 1)
        if a == s + 1:
            return s if x > 0 else -s
        return x
    return tuple(f(x) for x in window)


class WeylB:
    """W(B_d) with all elements materialized and indexed."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("d must be positive")
        self.d = d
        self.gens = tuple(range(d))
        e = tuple(range(1, d + 1))
        # breadth-first search: BFS distance is the length
        dist = {e: 0}
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.gens:
                    u = _right_mult(w, s)
                    if u not in dist:
                        dist[u] = dist[w] + 1
                        nxt.append(u)
            frontier = nxt
        # lex-least reduced words by stripping the smallest left descent
        words = {e: ()}
        for w in sorted(dist, key=lambda x: dist[x]):
            if w == e:
                continue
            for s in self.gens:
                u = _left_mult(w, s)
                if dist[u] < dist[w]:
                    words[w] = (s,) + words[u]
                    break
        order = sorted(dist, key=lambda x: (dist[x], words[x]))
        self.windows = order
        self.elements = [SignedPerm(w) for w in order]
        self.index = {w: i for i, w in enumerate(order)}
        n = len(order)
        self._len = [dist[w] for w in order]
        self._word = [words[w] for w in order]
        self.rmul = [[self.index[_right_mult(w, s)] for s in self.gens] for w in order]
        self.lmul = [[self.index[_left_mult(w, s)] for s in self.gens] for w in order]
        self._inv = [self.index[SignedPerm(w).inverse().window] for w in order]
        self._qexp = [(wd.count(0), len(wd) - wd.count(0)) for wd in self._word]
        self.identity_index = 0
        self.longest_index = n - 1
        self._below = None

    # -- basic data ---------------------------------------------------
    def __len__(self):
        return len(self.windows)

    def idx(self, w) -> int:
        if isinstance(w, int):
            return w
        if isinstance(w, SignedPerm):
            return self.index[w.window]
        return self.index[tuple(w)]

    def elt(self, i) -> SignedPerm:
        return self.elements[self.idx(i)]

    def length(self, w) -> int:
        return self._len[self.idx(w)]

    def word(self, w) -> tuple:
        return self._word[self.idx(w)]

    def inverse(self, w) -> int:
        return self._inv[self.idx(w)]

    def q_exponents(self, w):
        """(a, b) with q_w = p^a q^b."""
        return self._qexp[self.idx(w)]

    def q_w(self, w) -> LaurentPoly:
        a, b = self._qexp[self.idx(w)]
        return LaurentPoly.mono(a, b)

    def sign(self, w) -> int:
        return -1 if self._len[self.idx(w)] % 2 else 1

    def longest(self) -> int:
        return self.longest_index

    def mul(self, u, v) -> int:
        u = self.idx(u)
        for s in self._word[self.idx(v)]:
            u = self.rmul[u][s]
        return u

    def from_word(self, word) -> int:
        u = 0
        for s in word:
            u = self.rmul[u][s]
        return u

    def right_descent(self, w, s) -> bool:
        w = self.idx(w)
        return self._len[self.rmul[w][s]] < self._len[w]

    def left_descent(self, w, s) -> bool:
        w = self.idx(w)
        return self._len[self.lmul[w][s]] < self._len[w]

    # -- Bruhat order -------------------------------------------------
    def _bruhat_table(self):
        if self._below is None:
            below = [0] * len(self)
            below[0] = 1
            for w in range(1, len(self)):
                s = self._word[w][0]
                u = self.lmul[w][s]
                m = below[u]
                img = 0
                x = m
                while x:
                    low = x & -x
                    y = low.bit_length() - 1
                    img |= 1 << self.lmul[y][s]
                    x ^= low
                below[w] = m | img
            self._below = below
        return self._below

    def bruhat_leq(self, y, w) -> bool:
        return bool((self._bruhat_table()[self.idx(w)] >> self.idx(y)) & 1)

    def bruhat_below(self, w):
        """Indices y with y <= w, ascending."""
        m = self._bruhat_table()[self.idx(w)]
        return [i for i in range(len(self)) if (m >> i) & 1]

    # -- parabolic machinery ------------------------------------------
    def parabolic(self, X):
        return self._parabolic(frozenset(X))

    @lru_cache(maxsize=None)
    def _parabolic(self, J) -> tuple:
        """Indices of W_J, in the global order."""
        J = frozenset(J)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for s in J:
                    u = self.rmul[w][s]
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen))

    def longest_in(self, J) -> int:
        """w_J."""
        return max(self.parabolic(frozenset(J)), key=lambda i: self._len[i])

    def is_min_rep(self, J, w) -> bool:
        w = self.idx(w)
        return all(not self.left_descent(w, s) for s in J)

    def min_coset_reps(self, X):
        return self._min_coset_reps(frozenset(X))

    @lru_cache(maxsize=None)
    def _min_coset_reps(self, J) -> tuple:
        """^J W: w with s_j w > w for all j in J, sorted by (length, word)."""
        J = frozenset(J)
        return tuple(w for w in range(len(self)) if self.is_min_rep(J, w))

    def min_right_coset_reps(self, X):
        return self._min_right_coset_reps(frozenset(X))

    @lru_cache(maxsize=None)
    def _min_right_coset_reps(self, K) -> tuple:
        """W^K: w with w s_k > w for all k in K."""
        K = frozenset(K)
        return tuple(w for w in range(len(self)) if all(not self.right_descent(w, s) for s in K))

    def coset_factor(self, J, w):
        """w = w_J-part * ^J w with lengths adding; returns (u, x)."""
        J = frozenset(J)
        w = self.idx(w)
        u = 0
        x = w
        while True:
            for s in sorted(J):
                if self.left_descent(x, s):
                    x = self.lmul[x][s]
                    u = self.rmul[u][s]
                    break
            else:
                return u, x

    def double_coset_data(self, J, K):
        return self._double_coset_data(frozenset(J), frozenset(K))

    @lru_cache(maxsize=None)
    def _double_coset_data(self, J, K):
        """List of (x, J_x, x') for x in ^J W^K.

        J_x = {k in K : x s_k x^-1 in W_J} and x' is the longest element of
        ^{J_x} W_K.  Bijectivity and length additivity of
        W_J x {x} x ^{J_x}W_K -> W_J x W_K are verified.
        """
        J, K = frozenset(J), frozenset(K)
        WJ = set(self.parabolic(J))
        WK = self.parabolic(K)
        reps = [x for x in self.min_coset_reps(J) if x in set(self.min_right_coset_reps(K))]
        out = []
        covered = set()
        for x in reps:
            xinv = self._inv[x]
            Jx = frozenset(k for k in K if self.mul(self.mul(x, self.rmul[0][k]), xinv) in WJ)
            tail = [u for u in WK if all(not self.left_descent(u, s) for s in Jx)]
            xp = max(tail, key=lambda i: self._len[i])
            coset = set()
            for a in WJ:
                for u in tail:
                    w = self.mul(self.mul(a, x), u)
                    if self._len[w] != self._len[a] + self._len[x] + self._len[u]:
                        raise AssertionError("double coset factorization not length additive")
                    coset.add(w)
            target = {self.mul(self.mul(a, x), b) for a in WJ for b in WK}
            if coset != target or len(coset) != len(WJ) * len(tail):
                raise AssertionError("double coset factorization not bijective")
            if covered & coset:
                raise AssertionError("double cosets overlap")
            covered |= coset
            out.append((x, Jx, xp))
        if len(covered) != len(self):
            raise AssertionError("double cosets do not cover W")
        return tuple(out)

    def format(self, w) -> str:
        return str(self.elt(w))


@lru_cache(maxsize=None)
def weyl_group(d: int) -> WeylB:
    return WeylB(d)
