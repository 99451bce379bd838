"""Kazhdan-Lusztig bases, the dual module H*, bilinear forms, left cells.

C_w is the unique bar-invariant element in H_w + sum_{y<w} AZ+ H_y and
D_w the one in H_w + sum_{y<w} AZ- H_y.  Both are built by the same
descending defect correction, in ``_kl_recursion``.
"""

from __future__ import annotations

import csv
import hashlib
import inspect
import io
import json
import os
from functools import lru_cache

from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra, _addto, _acc
from .ring import LaurentPoly, ONE, ZERO, decompose

__all__ = [
    "KLTable",
    "kl_basis",
    "dual_kl_basis",
    "set_cache_dir",
    "get_cache_dir",
    "check_kl_table",
    "expand_in_basis",
    "dual_module_action",
    "h_basis",
    "d_iso",
    "dual_bar",
    "form",
    "form_direct",
    "form_J",
    "parabolic_bases",
    "CellDatum",
    "left_cells",
    "cell_module",
]


class KLTable:
    """Columns w -> {y: coefficient of H_y in C_w (or D_w)}."""

    def __init__(self, d, kind, cols):
        self.d = d
        self.kind = kind
        self.H = hecke_algebra(d)
        self.W = self.H.W
        self.cols = cols

    def coeff(self, y, w):
        return self.cols[self.W.idx(w)].get(self.W.idx(y), ZERO)

    def elt(self, w) -> HeckeElt:
        return HeckeElt._raw(self.H, dict(self.cols[self.W.idx(w)]))

    def __len__(self):
        return len(self.cols)

    def to_json(self):
        W = self.W
        cols = []
        for w, col in enumerate(self.cols):
            terms = [{"c": c.to_json(), "y": list(W.elt(y).window)}
                     for y, c in sorted(col.items(), key=lambda kv: (W.length(kv[0]), W.elt(kv[0]).window))]
            cols.append({"terms": terms, "w": list(W.elt(w).window)})
        return {"code": code_version(), "columns": cols, "d": self.d, "kind": self.kind}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data):
        d = data["d"]
        W = hecke_algebra(d).W
        cols = [None] * len(W)
        for col in data["columns"]:
            w = W.idx(tuple(col["w"]))
            cols[w] = {W.idx(tuple(t["y"])): LaurentPoly.from_json(t["c"]) for t in col["terms"]}
        return cls(d, data["kind"], cols)

    def to_csv(self):
        W = self.W
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["w", "y", "coefficient"])
        for w, col in enumerate(self.cols):
            for y, c in sorted(col.items()):
                wr.writerow([W.format(w), W.format(y), str(c)])
        return buf.getvalue()


def _kl_recursion(H: HeckeAlgebra, kind: str):
    """Ascending induction on length; corrections from the top stratum down.

    For X = H_w + sum a_y B_y the defect bar(X) - X is bar-antisymmetric, so
    its coefficient at a maximal y splits as gamma = gamma- + gamma+ with no
    constant term; a_y := gamma+ (kind C) or gamma- (kind D) kills it.
    """
    W = H.W
    n = len(W)
    cols = [None] * n
    by_len = sorted(range(n), key=lambda i: -W._len[i])
    for w in range(n):
        X = {w: ONE}
        D = dict(H.bar_basis(w))
        _acc(D, w, -ONE)
        lw = W._len[w]
        for y in by_len:
            if W._len[y] >= lw:
                continue
            g = D.get(y)
            if not g:
                continue
            minus, zero, plus = decompose(g)
            if zero:
                raise AssertionError(f"defect with nonzero constant term at y={y}, w={w}")
            if minus != -plus.bar():
                raise AssertionError("defect is not bar-antisymmetric")
            a = plus if kind == "C" else minus
            _addto(X, cols[y], a)
            # bar(a) - a = -g in both cases
            _addto(D, cols[y], -g)
        if D:
            raise AssertionError(f"residual bar defect for w={w}")
        cols[w] = X
    return cols


def code_version():
    src = inspect.getsource(_kl_recursion)
    return hashlib.sha256(src.encode()).hexdigest()[:16]


def _cache_path(cache_dir, d, kind):
    return os.path.join(cache_dir, f"B{d}-{kind}.json")


@lru_cache(maxsize=None)
def _table(d, kind):
    return KLTable(d, kind, _kl_recursion(hecke_algebra(d), kind))


_default_cache_dir = None


def set_cache_dir(path):
    """Default cache directory for KL tables; None falls back to $JCRYSTAL_CACHE_DIR."""
    global _default_cache_dir
    _default_cache_dir = path
    _load_or_build.cache_clear()


def get_cache_dir():
    return _default_cache_dir or os.environ.get("JCRYSTAL_CACHE_DIR") or None


@lru_cache(maxsize=None)
def _load_or_build(d, kind, cache_dir):
    if cache_dir:
        path = _cache_path(cache_dir, d, kind)
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if data.get("code") == code_version():
                return KLTable.from_json(data)
        table = _table(d, kind)
        os.makedirs(cache_dir, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(table.dumps())
        return table
    return _table(d, kind)


def kl_basis(d, cache_dir=None) -> KLTable:
    return _load_or_build(d, "C", cache_dir or get_cache_dir())


def dual_kl_basis(d, cache_dir=None) -> KLTable:
    return _load_or_build(d, "D", cache_dir or get_cache_dir())


def check_kl_table(table: KLTable):
    """Return a list of failure witnesses (empty when the table is correct)."""
    H, W = table.H, table.W
    bad = []
    which = "AZplus" if table.kind == "C" else "AZminus"
    for w in range(len(W)):
        col = table.cols[w]
        if col.get(w) != ONE:
            bad.append(("diagonal", w))
        for y, c in col.items():
            if y == w:
                continue
            if not W.bruhat_leq(y, w):
                bad.append(("bruhat", y, w))
            minus, zero, plus = decompose(c)
            ok = (not minus and not zero) if which == "AZplus" else (not plus and not zero)
            if not ok:
                bad.append(("lattice", y, w))
        e = table.elt(w)
        if H.bar(e) != e:
            bad.append(("bar", w))
    return bad


def expand_in_basis(h: HeckeElt, table: KLTable) -> dict:
    """Coefficients of h in the basis {C_w} (or {D_w}); unitriangular solve."""
    W = table.W
    rest = dict(h.c)
    out = {}
    while rest:
        y = max(rest, key=lambda i: (W._len[i], i))
        c = rest[y]
        out[y] = c
        _addto(rest, table.cols[y], -c)
    return out


# ---------------------------------------------------------------------------
# the dual module H*; elements are dicts y -> coefficient of h_y

def h_basis(w):
    return {w: ONE}


def _dual_gen(H: HeckeAlgebra, s, f):
    """H_s h_w = h_{sw} + [sw < w](q_s^-1 - q_s) h_w."""
    W = H.W
    out = {}
    for w, c in f.items():
        sw = W.lmul[w][s]
        _acc(out, sw, c)
        if W._len[sw] < W._len[w]:
            _acc(out, w, c * H.quad[s])
    return out


def dual_module_action(H: HeckeAlgebra, h: HeckeElt, f: dict) -> dict:
    """(h f)(H') = f(h^flat H')."""
    W = H.W
    out = {}
    for w, c in h.c.items():
        x = f
        for s in reversed(W._word[w]):
            x = _dual_gen(H, s, x)
        _addto(out, x, c)
    return out


def d_iso(H: HeckeAlgebra, h: HeckeElt) -> dict:
    """d(h) = h . h_{w_0}."""
    return dual_module_action(H, h, h_basis(H.W.longest()))


def dual_eval(f: dict, h: HeckeElt):
    s = ZERO
    for y, c in h.c.items():
        v = f.get(y)
        if v:
            s = s + v * c
    return s


def dual_bar(H: HeckeAlgebra, f: dict) -> dict:
    """bar(f)(h) = bar(f(bar h)); coefficient at y is bar(sum_z r_{z,y} f_z)."""
    out = {}
    for y in range(len(H.W)):
        s = ZERO
        for z, r in H.bar_basis(y).items():
            v = f.get(z)
            if v:
                s = s + r * v
        if s:
            out[y] = s.bar()
    return out


def form(H: HeckeAlgebra, a: HeckeElt, b: HeckeElt) -> LaurentPoly:
    """<a | b> := d(b)(a)."""
    return dual_eval(d_iso(H, b), a)


def form_direct(H: HeckeAlgebra, a: HeckeElt, b: HeckeElt) -> LaurentPoly:
    """Coefficient of H_{w_0} in b^flat a (independent route)."""
    return H.mul(H.flat(b), a)[H.W.longest()]


def form_J(H: HeckeAlgebra, J, a: HeckeElt, b: HeckeElt) -> LaurentPoly:
    """<a | b>_J = <a | b> / P_J for a, b in x_J H; exactness asserted."""
    H.xj_coords(J, a)
    H.xj_coords(J, b)
    val = form_direct(H, a, b)
    return val.exact_div(H.P_J(J))


# ---------------------------------------------------------------------------
# parabolic bases

def parabolic_bases(d, J):
    """{w: (^J C_w, ^J D_w)} for w in ^J W, with ^J C_w = C_{w_J w} and
    ^J D_w = x_J D_w checked against their intrinsic characterization."""
    H = hecke_algebra(d)
    W = H.W
    C, D = kl_basis(d), dual_kl_basis(d)
    J = frozenset(J)
    wJ = W.longest_in(J)
    xJ = H.x_J(J)
    out = {}
    for w in W.min_coset_reps(J):
        jc = C.elt(W.mul(wJ, w))
        jd = H.mul(xJ, D.elt(w))
        for elt, which in ((jc, "AZplus"), (jd, "AZminus")):
            if H.bar(elt) != elt:
                raise AssertionError("parabolic KL element not bar-invariant")
            co = H.xj_coords(J, elt)
            if co.get(w) != ONE:
                raise AssertionError("parabolic KL element not unitriangular")
            for y, c in co.items():
                if y == w:
                    continue
                mi, z, pl = decompose(c)
                if z or (which == "AZplus" and mi) or (which == "AZminus" and pl):
                    raise AssertionError("parabolic KL coefficient outside the lattice")
        out[w] = (jc, jd)
    return out


# ---------------------------------------------------------------------------
# left cells

class CellDatum:
    """Left cells of W_d, the relation ->_L and its closure <=_L."""

    def __init__(self, d):
        self.d = d
        H = self.H = hecke_algebra(d)
        W = self.W = H.W
        C = self.C = kl_basis(d)
        n = len(W)
        self.products = {}
        arrows = [set() for _ in range(n)]  # arrows[w] = {y : y ->_L w}
        for s in W.gens:
            Cs = C.elt(W.rmul[0][s])
            for w in range(n):
                prod = H.mul(Cs, C.elt(w))
                coeffs = expand_in_basis(prod, C)
                self.products[(s, w)] = coeffs
                arrows[w].update(coeffs)
        self.arrows = arrows
        # below[w] = {y : y <=_L w}
        below = []
        for w in range(n):
            seen = {w}
            stack = [w]
            while stack:
                x = stack.pop()
                for y in arrows[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            below.append(frozenset(seen))
        self.below = below
        cells = []
        assigned = set()
        for w in range(n):
            if w in assigned:
                continue
            cell = tuple(sorted(y for y in below[w] if w in below[y]))
            assigned.update(cell)
            cells.append(cell)
        self.cells = sorted(cells)
        self.cell_of = {}
        for k, X in enumerate(self.cells):
            for x in X:
                self.cell_of[x] = k

    def leq_L(self, y, w):
        return y in self.below[w]

    def below_cell(self, X):
        """{y : y <=_L X}."""
        return frozenset().union(*(self.below[x] for x in X))

    def strictly_below_cell(self, X):
        return self.below_cell(X) - frozenset(X)

    def times_w0(self, X):
        W = self.W
        w0 = W.longest()
        return tuple(sorted(W.mul(x, w0) for x in X))

    def sizes(self):
        return sorted(len(X) for X in self.cells)

    def dot(self):
        W = self.W
        lines = ["digraph leftcells {"]
        for w in range(len(W)):
            lines.append(f'  n{w} [label="{W.format(w)}"];')
        for w in range(len(W)):
            for y in sorted(self.arrows[w]):
                if y != w:
                    lines.append(f"  n{y} -> n{w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def left_cells(d) -> CellDatum:
    return CellDatum(d)


def cell_module(d, X, kind="C"):
    """Matrices of H_s on [C_x]_X (kind C) or [D_x]'_X (kind D).

    Returns (basis, {s: {(row, col): coefficient}}).  Closure of the
    <=_L spans under left multiplication is asserted.
    """
    cd = left_cells(d)
    H, W = cd.H, cd.W
    X = tuple(sorted(X))
    table = kl_basis(d) if kind == "C" else dual_kl_basis(d)
    below = cd.below_cell(X)
    pos = {x: i for i, x in enumerate(X)}
    mats = {}
    for s in W.gens:
        m = {}
        for x in X:
            prod = H.lmul_word((s,), table.elt(x))
            coeffs = expand_in_basis(prod, table)
            for z, c in coeffs.items():
                if z not in below:
                    raise AssertionError("<=_L span not stable under H_s")
                if z in pos:
                    m[(pos[z], pos[x])] = c
        mats[s] = m
    return list(X), mats
