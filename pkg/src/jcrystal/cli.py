"""Command-line interface: ``jcrystal <command> [flags]``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage errors.

>>> main(["kl", "--d", "1", "--kind", "C"])  # doctest: +ELLIPSIS
{"code":...,"columns":...,"d":1,"kind":"C"}
0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from . import kl
from .bipartition import Bipartition

__all__ = ["main", "RunConfig", "build_parser"]

MAX_RANK = 2
BOUND = (2, 4)


class UsageError(Exception):
    pass


class RunConfig:
    def __init__(self, r=1, d=1, cache_dir=None, output="text", suite="all", jobs=1):
        if r < 1 or d < 1:
            raise UsageError("r and d must be at least 1")
        if r > BOUND[0] or d > BOUND[1]:
            warnings.warn(f"(r, d) = ({r}, {d}) is beyond {BOUND}; expect long runtimes", stacklevel=2)
        if jobs < 1:
            raise UsageError("--jobs must be at least 1")
        self.r, self.d = r, d
        self.cache_dir = cache_dir
        self.output = output
        self.suite = suite
        self.jobs = jobs


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bipartition(text, r):
    try:
        lam = Bipartition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc))
    if lam.r != r:
        raise UsageError(f"bipartition {text!r} does not have rank {r}")
    if any(x < 0 for x in lam.minus + lam.plus) or list(lam.minus) != sorted(lam.minus, reverse=True) \
            or list(lam.plus) != sorted(lam.plus, reverse=True):
        raise UsageError(f"{text!r} is not a bipartition")
    if lam.size < 1:
        raise UsageError("the empty bipartition is not supported")
    return lam


def cmd_kl(cfg, kind, fmt):
    table = kl.kl_basis(cfg.d) if kind == "C" else kl.dual_kl_basis(cfg.d)
    if fmt == "csv":
        return table.to_csv()
    return table.dumps() + "\n"


def cmd_cells(cfg):
    cd = kl.left_cells(cfg.d)
    W = cd.W
    data = {
        "d": cfg.d,
        "cells": [[W.format(x) for x in X] for X in cd.cells],
        "dot": cd.dot(),
    }
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def cmd_schur(cfg):
    from .globalcrystal import tensor_uj_module
    from .ujrep import check_commutation, check_relations, check_surjection_formulas
    mod = tensor_uj_module(cfg.r, cfg.d)
    report = {
        "relations": [str(w) for w in check_relations(cfg.r, cfg.d)],
        "commutation": [str(w) for w in check_commutation(cfg.r, cfg.d)],
        "surjection": [str(w) for w in check_surjection_formulas(cfg.r, cfg.d)],
    }
    data = {"r": cfg.r, "d": cfg.d, "module": mod.to_json(), "report": report}
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def cmd_irrep(cfg, lam):
    from .globalcrystal import irrep_json
    return irrep_json(lam)


def cmd_crystal_graph(cfg, lam):
    from .globalcrystal import crystal_graph_dot
    return crystal_graph_dot(lam)


def _run_named(args):
    name, cache_dir = args
    from .suites import run_check
    if cache_dir:
        kl.set_cache_dir(cache_dir)
    try:
        return run_check(name)
    except Exception as exc:  # a crash is a failure with a witness
        return [("exception", type(exc).__name__, str(exc))]


def _witness_json(w):
    return json.dumps([list(map(str, x)) if isinstance(x, (tuple, list)) else str(x) for x in w],
                      sort_keys=True, ensure_ascii=False)


def cmd_verify(cfg):
    from .suites import suite_checks
    try:
        names = suite_checks(cfg.suite)
    except KeyError:
        raise UsageError(f"unknown suite {cfg.suite!r}")
    jobs = [(n, cfg.cache_dir) for n in names]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_named, jobs))
    else:
        results = [_run_named(j) for j in jobs]
    lines = []
    ok = True
    for name, wit in zip(names, results):
        if wit:
            ok = False
            lines.append(f"FAIL {name} {_witness_json(wit)}")
        else:
            lines.append(f"PASS {name}")
    lines.append(f"{'PASS' if ok else 'FAIL'} suite {cfg.suite} ({sum(not w for w in results)}/{len(names)})")
    return "\n".join(lines) + "\n", ok


def build_parser():
    ap = argparse.ArgumentParser(prog="jcrystal", description=__doc__.splitlines()[0])
    ap.add_argument("--cache-dir", default=None, help="KL table cache (overrides $JCRYSTAL_CACHE_DIR)")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None, help="write output to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, r=False, d=False, lam=False):
        # accept the global flags after the subcommand as well
        p.add_argument("--cache-dir", default=argparse.SUPPRESS)
        p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS)
        if r:
            p.add_argument("--r", type=int, required=True)
        if d:
            p.add_argument("--d", type=int, required=True)
        if lam:
            p.add_argument("--bipartition", required=True)
        return p

    p = common(sub.add_parser("kl", help="KL or dual KL table"), d=True)
    p.add_argument("--kind", choices=["C", "D"], default="C")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(sub.add_parser("cells", help="left cells and the ->_L graph"), d=True)
    common(sub.add_parser("schur", help="U^j generators on V^{(x)d} and relation report"), r=True, d=True)
    common(sub.add_parser("irrep", help="irreducible module with its global bases"), r=True, lam=True)
    common(sub.add_parser("crystal-graph", help="crystal graph in DOT"), r=True, lam=True)
    p = common(sub.add_parser("verify", help="run a verification suite"))
    p.add_argument("--suite", default="all")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        r = getattr(args, "r", 1)
        if r < 1 or r > MAX_RANK:
            raise UsageError(f"rank {r} out of range 1..{MAX_RANK}")
        lam = None
        if getattr(args, "bipartition", None) is not None:
            lam = _bipartition(args.bipartition, r)
        d = getattr(args, "d", None)
        if d is None:
            d = lam.size if lam else 1
        cfg = RunConfig(r=r, d=d, cache_dir=args.cache_dir, suite=getattr(args, "suite", "all"),
                        jobs=args.jobs)
        cache = args.cache_dir or os.environ.get("JCRYSTAL_CACHE_DIR")
        cfg.cache_dir = cache
        kl.set_cache_dir(cache)
        status = 0
        if args.command == "kl":
            text = cmd_kl(cfg, args.kind, args.format)
        elif args.command == "cells":
            text = cmd_cells(cfg)
        elif args.command == "schur":
            text = cmd_schur(cfg)
        elif args.command == "irrep":
            text = cmd_irrep(cfg, lam)
        elif args.command == "crystal-graph":
            text = cmd_crystal_graph(cfg, lam)
        else:
            text, ok = cmd_verify(cfg)
            status = 0 if ok else 1
    except UsageError as exc:
        print(f"jcrystal: error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
