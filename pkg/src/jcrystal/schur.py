"""The module T(pi) = sum_lambda x_lambda H and its centralizer S(pi).

A composition lambda = (lambda_0, ..., lambda_r) of d determines the
parabolic subset I_lambda.  S(pi) has the basis xi_{lambda,x,mu}
(x in ^lambda W^mu), where xi_{lambda,x,mu} sends x_mu to

    eta_{lambda,x,mu} = q_{w_lambda x x'} sum_{w in W_lambda x W_mu} q_w^-1 H_w.

Products are computed by evaluating on the generators x_nu and reading the
result back in the xi basis.

>>> S = schur_algebra(1, 1)
>>> S.comps
[(1, 0), (0, 1)]
>>> sorted(S.I[(1, 0)]), sorted(S.I[(0, 1)])
([0], [])
>>> t = S.xi((0, 1), 0, (1, 0))(S.x((1, 0)))
>>> t[(0, 1)]
(p)*H[1] + (1)*H[-1]
"""

from __future__ import annotations

import json
from functools import lru_cache

from .hecke import HeckeElt, hecke_algebra, _addto
from .kl import dual_kl_basis, kl_basis, left_cells
from .ring import LaurentPoly, ONE, ZERO, Q

__all__ = [
    "compositions",
    "I_lambda",
    "TElt",
    "SElt",
    "SchurAlgebra",
    "schur_algebra",
    "CellModuleS",
    "cell_modules_over_S",
]


def compositions(r, d):
    """All (lambda_0, ..., lambda_r) >= 0 summing to d, in reverse lex order."""
    out = []

    def rec(rest, k, acc):
        if k == r:
            out.append(tuple(acc + [rest]))
            return
        for a in range(rest, -1, -1):
            rec(rest - a, k + 1, acc + [a])
    rec(d, 0, [])
    return out


def I_lambda(lam):
    """{0..d-1} minus the partial sums lambda_0, lambda_0 + lambda_1, ..., up to lambda_{0..r-1}."""
    d = sum(lam)
    cut = set()
    s = 0
    for part in lam[:-1]:
        s += part
        cut.add(s)
    return frozenset(range(d)) - cut


class TElt:
    """An element of T(pi): components lambda -> HeckeElt in x_lambda H."""

    __slots__ = ("S", "c")

    def __init__(self, S, comps=None, check=True):
        self.S = S
        self.c = {k: v for k, v in (comps or {}).items() if v}
        if check:
            for lam, h in self.c.items():
                S.H.xj_coords(S.I[lam], h)

    def __getitem__(self, lam):
        return self.c.get(lam, self.S.H.zero())

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out[k] + v if k in out else v
        return TElt(self.S, out, check=False)

    def __neg__(self):
        return TElt(self.S, {k: -v for k, v in self.c.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TElt(self.S, {k: v * c for k, v in self.c.items()}, check=False)

    def __eq__(self, other):
        return isinstance(other, TElt) and self.c == other.c

    def __bool__(self):
        return bool(self.c)

    def bar(self):
        return TElt(self.S, {k: self.S.H.bar(v) for k, v in self.c.items()}, check=False)

    def __repr__(self):
        return "TElt(" + ", ".join(f"{k}: {v}" for k, v in sorted(self.c.items(), reverse=True)) + ")"


class SElt:
    """An element of S(pi) in the xi basis: (lambda, x, mu) -> coefficient."""

    __slots__ = ("S", "c")

    def __init__(self, S, coeffs=None):
        self.S = S
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    def __add__(self, other):
        out = dict(self.c)
        _addto(out, other.c, None)
        return SElt(self.S, out)

    def __neg__(self):
        return SElt(self.S, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        return SElt(self.S, {k: v * c for k, v in self.c.items()})

    def __mul__(self, other):
        if isinstance(other, SElt):
            return self.S.compose(self, other)
        return self.scale(other)

    def __call__(self, t):
        return self.S.act(self, t)

    def __eq__(self, other):
        return isinstance(other, SElt) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def flat(self):
        return self.S.flat(self)

    def bar(self):
        return self.S.bar(self)

    def to_json(self):
        W = self.S.W
        return [{"lambda": list(l), "x": list(W.elt(x).window), "mu": list(m), "c": v.to_json()}
                for (l, x, m), v in sorted(self.c.items(), key=lambda kv: (kv[0][0], W.elt(kv[0][1]).window, kv[0][2]))]

    def __repr__(self):
        W = self.S.W
        parts = [f"({v.pretty()})*xi[{l},{W.format(x)},{m}]" for (l, x, m), v in sorted(self.c.items())]
        return " + ".join(parts) if parts else "0"


class SchurAlgebra:
    """S(pi) acting on T(pi) for a list of compositions of d."""

    def __init__(self, d, comps):
        self.d = d
        self.H = H = hecke_algebra(d)
        self.W = W = H.W
        self.comps = list(comps)
        self.I = {lam: I_lambda(lam) for lam in self.comps}
        self.wl = {lam: W.longest_in(self.I[lam]) for lam in self.comps}
        self.reps = {lam: W.min_coset_reps(self.I[lam]) for lam in self.comps}
        self.basis = []
        self._eta = {}
        self._top = {}
        for lam in self.comps:
            for mu in self.comps:
                for x, Jx, xp in W.double_coset_data(self.I[lam], self.I[mu]):
                    key = (lam, x, mu)
                    self.basis.append(key)
                    top = W.mul(W.mul(self.wl[lam], x), xp)
                    qt = W.q_w(top)
                    coset = {W.mul(W.mul(a, x), b) for a in W.parabolic(self.I[lam]) for b in W.parabolic(self.I[mu])}
                    self._eta[key] = HeckeElt._raw(H, {w: qt * W.q_w(w) ** -1 for w in coset})
                    self._top[key] = top
        self._index = {k: i for i, k in enumerate(self.basis)}

    # -- constructors -------------------------------------------------
    def x(self, lam) -> TElt:
        return TElt(self, {lam: self.H.x_J(self.I[lam])}, check=False)

    def telt(self, comps) -> TElt:
        return TElt(self, comps)

    def xi(self, lam, x, mu) -> SElt:
        x = self.W.idx(x)
        if (lam, x, mu) not in self._index:
            raise KeyError(f"no basis element xi_{lam},{x},{mu}")
        return SElt(self, {(lam, x, mu): ONE})

    def zero(self) -> SElt:
        return SElt(self, {})

    def one(self) -> SElt:
        return SElt(self, {(lam, 0, lam): ONE for lam in self.comps})

    def eta(self, lam, x, mu) -> HeckeElt:
        return self._eta[(lam, self.W.idx(x), mu)]

    def top(self, lam, x, mu) -> int:
        return self._top[(lam, self.W.idx(x), mu)]

    # -- the action on T(pi) ------------------------------------------
    def _act_basis(self, key, h: HeckeElt) -> HeckeElt:
        lam, x, mu = key
        coords = self.H.xj_coords(self.I[mu], h)
        eta = self._eta[key]
        out = {}
        for w, a in coords.items():
            _addto(out, self.H.rmul_word(eta, self.W._word[w]).c, a)
        return HeckeElt._raw(self.H, out)

    def act(self, s: SElt, t: TElt) -> TElt:
        out = {}
        for key, c in s.c.items():
            lam, x, mu = key
            h = t.c.get(mu)
            if not h:
                continue
            img = self._act_basis(key, h) * c
            out[lam] = out[lam] + img if lam in out else img
        return TElt(self, out, check=False)

    def expand_hom(self, images) -> SElt:
        """The SElt f with f(x_nu) = images[nu]; membership in S(pi) asserted.

        eta_{lambda,z,nu} has coefficient 1 at its top element and the
        double cosets are disjoint, so c_z is read off there; the
        reconstruction is then checked exactly and c_z must be integral.
        """
        W = self.W
        out = {}
        for nu, t in images.items():
            for lam, h in t.c.items():
                recon = {}
                for x, _, _ in W.double_coset_data(self.I[lam], self.I[nu]):
                    key = (lam, x, nu)
                    c = h.c.get(self._top[key])
                    if c:
                        if not c.is_integral():
                            raise AssertionError("xi structure constant is not integral")
                        out[key] = c
                        _addto(recon, self._eta[key].c, c)
                if recon != h.c:
                    raise AssertionError("map is not in the span of the xi basis")
        return SElt(self, out)

    def compose(self, a: SElt, b: SElt) -> SElt:
        """a o b, evaluated on every x_nu and re-expanded."""
        images = {nu: a(b(self.x(nu))) for nu in self.comps}
        return self.expand_hom(images)

    # -- anti-automorphism and involutions ----------------------------
    def flat(self, s: SElt) -> SElt:
        inv = self.W._inv
        return SElt(self, {(mu, inv[x], lam): c for (lam, x, mu), c in s.c.items()})

    def bar_T(self, t: TElt) -> TElt:
        return t.bar()

    def bar(self, s: SElt) -> SElt:
        """bar(f)(m) = bar(f(bar m)); on the bar-invariant x_nu this is bar(f(x_nu))."""
        images = {nu: s(self.x(nu)).bar() for nu in self.comps}
        return self.expand_hom(images)

    bar_S = bar
    flat_S = flat

    # -- the form ------------------------------------------------------
    def form_pi(self, a: TElt, b: TElt) -> LaurentPoly:
        """sum_lambda <a_lambda | b_lambda>_{I_lambda}."""
        from .kl import form_J
        s = ZERO
        for lam in self.comps:
            if lam in a.c and lam in b.c:
                s = s + form_J(self.H, self.I[lam], a.c[lam], b.c[lam])
        return s

    # -- parabolic KL bases of T(pi) ----------------------------------
    def tkl_C(self, lam, w) -> TElt:
        """^lambda C_w = C_{w_lambda w}."""
        C = kl_basis(self.d)
        return TElt(self, {lam: C.elt(self.W.mul(self.wl[lam], w))}, check=False)

    def tkl_D(self, lam, w) -> TElt:
        """^lambda D_w = x_lambda D_w."""
        D = dual_kl_basis(self.d)
        return TElt(self, {lam: self.H.mul(self.H.x_J(self.I[lam]), D.elt(w))}, check=False)

    @lru_cache(maxsize=None)
    def _tkl_coords(self, kind, lam, w):
        t = self.tkl_C(lam, w) if kind == "C" else self.tkl_D(lam, w)
        co = self.H.xj_coords(self.I[lam], t.c[lam])
        if co.get(w) != ONE or any(self.W._len[y] >= self.W._len[w] for y in co if y != w):
            raise AssertionError("parabolic KL element not unitriangular")
        return co

    def expand_tkl(self, t: TElt, kind="C") -> dict:
        """{(lambda, w): coefficient} of t in the ^lambda C (or ^lambda D) basis."""
        W = self.W
        out = {}
        for lam, h in t.c.items():
            rest = dict(self.H.xj_coords(self.I[lam], h))
            while rest:
                y = max(rest, key=lambda i: (W._len[i], i))
                c = rest[y]
                out[(lam, y)] = c
                _addto(rest, self._tkl_coords(kind, lam, y), -c)
        return out

    def tkl_labels(self):
        return [(lam, w) for lam in self.comps for w in self.reps[lam]]

    def dim_T(self):
        return sum(len(self.reps[lam]) for lam in self.comps)

    def structure_constants(self):
        """{(a, b): a * b} over all composable basis pairs."""
        out = {}
        for a in self.basis:
            for b in self.basis:
                if a[2] == b[0]:
                    out[(a, b)] = self.compose(SElt(self, {a: ONE}), SElt(self, {b: ONE}))
        return out

    def dumps_structure_constants(self):
        W = self.W
        rows = []
        for (a, b), prod in self.structure_constants().items():
            rows.append({
                "left": [list(a[0]), list(W.elt(a[1]).window), list(a[2])],
                "right": [list(b[0]), list(W.elt(b[1]).window), list(b[2])],
                "product": prod.to_json(),
            })
        rows.sort(key=lambda r: json.dumps([r["left"], r["right"]]))
        return json.dumps({"d": self.d, "comps": [list(c) for c in self.comps], "products": rows},
                          sort_keys=True, separators=(",", ":"))

    # -- coideal generators --------------------------------------------
    def _shift(self, lam, up, down):
        """lambda with lambda_up + 1 and lambda_down - 1, or None."""
        if lam[down] == 0:
            return None
        m = list(lam)
        m[up] += 1
        m[down] -= 1
        return tuple(m)

    def xi_e(self, i) -> SElt:
        """sum_lambda xi_{e~_i lambda, e, lambda}."""
        out = {}
        for lam in self.comps:
            mu = self._shift(lam, i - 1, i)
            if mu is not None and mu in self.I:
                out[(mu, 0, lam)] = ONE
        return SElt(self, out)

    def xi_f(self, i) -> SElt:
        out = {}
        for lam in self.comps:
            mu = self._shift(lam, i, i - 1)
            if mu is not None and mu in self.I:
                out[(mu, 0, lam)] = ONE
        return SElt(self, out)

    def k_exponent(self, i, lam):
        """Exponent of q in the action of k_i on the lambda component."""
        if i == 1:
            return 2 * lam[0] - lam[1]
        return lam[i - 1] - lam[i]

    def xi_k(self, i, sign=1) -> SElt:
        return SElt(self, {(lam, 0, lam): Q ** (sign * self.k_exponent(i, lam)) for lam in self.comps})

    def relevant_cells_dot(self):
        """DOT of ->_L restricted to cells meeting some w_lambda ^lambda W."""
        cd = left_cells(self.d)
        W = self.W
        keep = set()
        for lam in self.comps:
            for w in self.reps[lam]:
                keep.add(cd.cell_of[W.mul(self.wl[lam], w)])
        nodes = sorted(x for k in keep for x in cd.cells[k])
        lines = ["digraph relevant_cells {"]
        for w in nodes:
            lines.append(f'  n{w} [label="{W.format(w)}"];')
        for w in nodes:
            for y in sorted(cd.arrows[w]):
                if y != w and y in set(nodes):
                    lines.append(f"  n{y} -> n{w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def schur_algebra(r, d) -> SchurAlgebra:
    """S(pi) for pi the compositions of d with r+1 parts."""
    return SchurAlgebra(d, compositions(r, d))


class CellModuleS:
    """C^L_X(pi) or D^L_X(pi) with its basis labels (lambda, w)."""

    def __init__(self, S: SchurAlgebra, X, kind="C"):
        self.S = S
        self.kind = kind
        self.X = tuple(sorted(X))
        W = S.W
        cd = left_cells(S.d)
        self.below = cd.below_cell(self.X)
        Xs = set(self.X)
        if kind == "C":
            self.labels = [(lam, w) for lam in S.comps for w in S.reps[lam] if W.mul(S.wl[lam], w) in Xs]
        else:
            self.labels = [(lam, w) for lam in S.comps for w in S.reps[lam] if w in Xs]
        self.pos = {b: i for i, b in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def element(self, label) -> TElt:
        lam, w = label
        return self.S.tkl_C(lam, w) if self.kind == "C" else self.S.tkl_D(lam, w)

    def _key(self, label):
        lam, w = label
        return self.S.W.mul(self.S.wl[lam], w) if self.kind == "C" else w

    def matrix(self, s: SElt) -> dict:
        """{(row, col): coefficient} of s on the cell basis; <=_L closure asserted."""
        S = self.S
        m = {}
        for j, label in enumerate(self.labels):
            img = s(self.element(label))
            for lab, c in S.expand_tkl(img, self.kind).items():
                if self._key(lab) not in self.below:
                    raise AssertionError("<=_L span not stable under S(pi)")
                i = self.pos.get(lab)
                if i is not None:
                    m[(i, j)] = c
        return m

    def generator_matrices(self):
        """Matrix of every xi basis element."""
        return {key: self.matrix(SElt(self.S, {key: ONE})) for key in self.S.basis}


def cell_modules_over_S(S: SchurAlgebra, X):
    return CellModuleS(S, X, "C"), CellModuleS(S, X, "D")
