"""Command line entry point.

Exit codes: 0 when every case passes (or is infeasible as expected),
1 on any verification failure, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import suites
from .report import VerificationReport


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing (not deterministic)")


def _seeded(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=suites.DEFAULT_SEED,
                   help=f"seed for randomized suites (default {suites.DEFAULT_SEED})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hellyfix", description="Exact verification sweeps.")
    top = ap.add_subparsers(dest="group", required=True)

    roots = top.add_parser("roots", help="root systems and Coxeter simplices").add_subparsers(dest="cmd", required=True)
    p = roots.add_parser("build", help="build one irreducible root system")
    p.add_argument("family")
    p.add_argument("rank", type=int)
    _common(p)
    for name in ("roots2", "property3"):
        p = roots.add_parser(name, help="collection certificates" if name == "roots2" else "witness pairs")
        p.add_argument("--all", action="store_true", help="every irreducible family up to --max-rank")
        p.add_argument("--max-rank", type=int, default=8)
        p.add_argument("--family")
        p.add_argument("--rank", type=int)
        if name == "roots2":
            p.add_argument("--variant", choices=["lowest", "highest", "both"], default="lowest")
            p.add_argument("--top-only", action="store_true",
                           help="only subsets of size |C| - 1 instead of every proper subset")
        _common(p)
    p = roots.add_parser("coxeter", help="classify Coxeter simplex groups")
    p.add_argument("files", nargs="+")
    _common(p)

    chev = top.add_parser("chevalley", help="elementary matrices of SL_n").add_subparsers(dest="cmd", required=True)
    p = chev.add_parser("commutator")
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--ring", default="Z[x1,x2]")
    p.add_argument("--samples", type=int, default=50)
    _seeded(p)
    _common(p)
    p = chev.add_parser("fukunaga")
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--ring", default="Z[x1,x2]")
    p.add_argument("--variant", choices=["lowest", "highest"], default="lowest")
    _common(p)
    p = chev.add_parser("nilpotency")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--subset", default="proper", help="simple | full | proper | i,j;k,l")
    p.add_argument("--ring", default="Z/4,trunc 3")
    p.add_argument("--variant", choices=["lowest", "highest"], default="lowest")
    p.add_argument("--class-bound", type=int)
    _common(p)
    p = chev.add_parser("ppower")
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--ring", default="Z[x]")
    _common(p)

    helly = top.add_parser("helly", help="nerves, Helly and Leray checks").add_subparsers(dest="cmd", required=True)
    p = helly.add_parser("nerve")
    p.add_argument("file")
    p.add_argument("--max-dim", type=int)
    _common(p)
    p = helly.add_parser("verify")
    p.add_argument("file", nargs="?")
    p.add_argument("--model", choices=["tree", "box"])
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--dim", type=int)
    _seeded(p)
    _common(p)
    p = helly.add_parser("leray")
    p.add_argument("file")
    _common(p)

    tree = top.add_parser("tree", help="isometries of metric trees").add_subparsers(dest="cmd", required=True)
    for name in ("classify", "fix", "common"):
        p = tree.add_parser(name)
        p.add_argument("file")
        _common(p)
    return ap


def dispatch(args) -> VerificationReport:
    g, c = args.group, args.cmd
    if g == "roots":
        if c == "build":
            return suites.roots_build(args.family, args.rank)
        if c in ("roots2", "property3"):
            if not args.all and args.family is None:
                raise suites.InputError("give --all or --family/--rank")
            fam, rank = (None, None) if args.all else (args.family, args.rank)
            if c == "roots2":
                return suites.roots_roots2(args.max_rank, fam, rank, args.variant, not args.top_only)
            return suites.roots_property3(args.max_rank, fam, rank)
        return suites.roots_coxeter(args.files)
    if g == "chevalley":
        if c == "commutator":
            return suites.chevalley_commutator(args.n, args.ring, args.samples, args.seed)
        if c == "fukunaga":
            return suites.chevalley_fukunaga(args.n, args.ring, args.variant)
        if c == "nilpotency":
            return suites.chevalley_nilpotency(args.n, args.subset, args.ring, args.variant, args.class_bound)
        return suites.chevalley_ppower(args.n, args.ring)
    if g == "helly":
        if c == "nerve":
            return suites.helly_nerve(args.file, args.max_dim)
        if c == "leray":
            return suites.helly_leray(args.file)
        if args.random is not None:
            if args.file is not None or args.model is None:
                raise suites.InputError("--random needs --model and no file")
            return suites.helly_random(args.model, args.random, args.seed, args.dim)
        if args.file is None:
            raise suites.InputError("give a family file or --model with --random")
        return suites.helly_verify_file(args.file)
    return {"classify": suites.tree_classify, "fix": suites.tree_fix, "common": suites.tree_common}[c](args.file)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    t0 = time.perf_counter()
    try:
        rep = dispatch(args)
    except suites.InputError as e:
        print(f"hellyfix: error: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, AssertionError) as e:
        print(f"hellyfix: verification failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.timing:
        rep.timing = {"total": time.perf_counter() - t0}
    sys.stdout.write(rep.dumps() if args.json else rep.render())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
