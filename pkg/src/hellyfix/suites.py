"""Sweeps behind the command line: each returns a VerificationReport.

Independent cases may run in worker processes (``HELLYFIX_JOBS``); results
are always assembled in input order, so reports do not depend on the
worker count.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from . import chevalley as chv
from . import roots as rt
from .coxeter import CoxeterError, CoxeterMatrix, coxeter_simplex_check
from .homology import reduced_homology
from .nerve import (ConvexFamily, helly_verify, leray_consistency, nerve, random_box_family,
                    random_subtree_family)
from .poly import RingSpec
from .report import Case, VerificationReport
from .trees import (MetricTree, classify, common_fixed_point, finite_group_fixed_point,
                    ActionSpec, load_action)

DEFAULT_SEED = 0


class InputError(ValueError):
    """Malformed input; the message carries the file and position."""


def jobs() -> int:
    try:
        return max(1, int(os.environ.get("HELLYFIX_JOBS", "1")))
    except ValueError:
        raise InputError("HELLYFIX_JOBS must be an integer") from None


def run_cases(fn: Callable, args: Sequence[tuple]) -> list:
    args = list(args)
    n = jobs()
    if n == 1 or len(args) < 2:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, *zip(*args)))


# ------------------------------------------------------------------- input


def resolve(path: str) -> Path:
    """A file path, falling back to the bundled fixtures by base name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("hellyfix") / "fixtures" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise InputError(f"{path}: no such file")


def load_json(path: str):
    p = resolve(path)
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _wrap(path: str, fn: Callable, *args):
    try:
        return fn(*args)
    except (ValueError, KeyError, TypeError, IndexError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        raise InputError(f"{path}: {type(e).__name__}: {msg}") from None


# ------------------------------------------------------------------- roots


def systems(max_rank: int, family: str | None = None, rank: int | None = None) -> list[tuple[str, int]]:
    if family is not None:
        if rank is None:
            raise InputError("--family needs --rank")
        try:
            rs = rt.build_root_system(family, rank)
        except rt.RootSystemError as e:
            raise InputError(str(e)) from None
        return [(rs.family, rs.rank)]
    return [(f, r) for f, r in rt.IRREDUCIBLE_TYPES if 2 <= r <= max_rank]


def build_case(family: str, rank: int) -> Case:
    rs = rt.build_root_system(family, rank)
    pos = len(rs.positive_roots)
    return Case(rs.name, "pass", f"{len(rs)} roots, {pos} positive", rs.to_json())


def roots2_case(family: str, rank: int, variant: str, exhaustive: bool) -> Case:
    rs = rt.build_root_system(family, rank)
    key = f"{rs.name}/{variant}"
    try:
        rep = rt.verify_roots2(rs, variant, exhaustive)
    except rt.CertificationError as e:
        return Case(key, "fail", str(e))
    bad = [c for c in rep.certificates if not rt.reverify_certificate(rs, c)]
    detail = {
        "subsets": len(rep.certificates),
        "reverified": len(rep.certificates) - len(bad),
        "pairwise_gram_nonpositive": rep.pairwise_nonpositive,
        "full_collection_one_sided": rep.full_separable,
        "certificates": [c.to_json() for c in rep.certificates],
    }
    if rep.full_witness is not None:
        detail["full_collection_zero_sum"] = [str(x) for x in rep.full_witness]
    full = "one-sided" if rep.full_separable else "not one-sided"
    status = "pass" if rep.ok and not bad else "fail"
    return Case(key, status, f"{len(rep.certificates)} proper subsets certified; full collection {full}", detail)


def property3_case(family: str, rank: int) -> Case:
    rs = rt.build_root_system(family, rank)
    wits, bad = [], []
    for a in rs.all_roots:
        try:
            w = rt.property3_witness(rs, a)
        except rt.CertificationError:
            bad.append(list(a.coeffs))
            continue
        if rt.one_sided_certificate(rs, [w.sigma, w.delta]) is None:
            bad.append(list(a.coeffs))
        wits.append(w.to_json())
    status = "fail" if bad else "pass"
    return Case(rs.name, status, f"{len(wits) - len(bad)}/{len(rs)} roots have witness pairs",
                {"failures": bad, "witnesses": wits})


def roots_build(family: str, rank: int) -> VerificationReport:
    rep = VerificationReport("roots build", {"family": family, "rank": rank})
    try:
        rep.add(build_case(family, rank))
    except rt.RootSystemError as e:
        raise InputError(str(e)) from None
    return rep


def roots_roots2(max_rank: int = 8, family=None, rank=None, variant: str = "lowest",
                 exhaustive: bool = True) -> VerificationReport:
    variants = ["lowest", "highest"] if variant == "both" else [variant]
    cases = [(f, r, v, exhaustive) for f, r in systems(max_rank, family, rank) for v in variants]
    rep = VerificationReport("roots roots2", {"max_rank": max_rank, "variant": variant,
                                              "exhaustive": exhaustive, "family": family, "rank": rank})
    for c in run_cases(roots2_case, cases):
        rep.add(c)
    return rep


def roots_property3(max_rank: int = 8, family=None, rank=None) -> VerificationReport:
    rep = VerificationReport("roots property3", {"max_rank": max_rank, "family": family, "rank": rank})
    for c in run_cases(property3_case, systems(max_rank, family, rank)):
        rep.add(c)
    return rep


def coxeter_case(cm: CoxeterMatrix) -> Case:
    key = cm.name or f"order-{cm.order}"
    try:
        r = coxeter_simplex_check(cm)
    except CoxeterError as e:
        return Case(key, "infeasible-as-expected", str(e), {"matrix": cm.to_json()})
    except ArithmeticError as e:
        return Case(key, "fail", f"procedures disagree: {e}", {"matrix": cm.to_json()})
    status = "pass" if r.procedures_agree else "fail"
    return Case(key, status, r.summary, r.to_json())


def roots_coxeter(paths: Sequence[str]) -> VerificationReport:
    mats = []
    for p in paths:
        data = load_json(p)
        if isinstance(data, dict) and "matrices" in data:
            mats.extend(_wrap(p, CoxeterMatrix.from_json, m) for m in data["matrices"])
        else:
            mats.append(_wrap(p, CoxeterMatrix.from_json, data))
    rep = VerificationReport("roots coxeter", {"files": [Path(p).name for p in paths]})
    for c in run_cases(coxeter_case, [(m,) for m in mats]):
        rep.add(c)
    return rep


# --------------------------------------------------------------- chevalley


def _ring(text: str) -> RingSpec:
    try:
        return RingSpec.parse(text)
    except ValueError as e:
        raise InputError(f"--ring: {e}") from None


def type_a_roots(n: int) -> list:
    return [chv.TypeARoot(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def commutator_case(n: int, ring_text: str, samples: int, seed: int) -> Case:
    ring = RingSpec.parse(ring_text)
    rng = random.Random(f"commutator:{n}:{seed}")
    table = chv.StructureConstantTable()
    roots = type_a_roots(n)
    checked = failed = additivity = 0
    failures = []
    try:
        for _ in range(samples):
            for a in roots:
                s, t = ring.random(rng), ring.random(rng)
                additivity += 1
                if not chv.verify_additivity(n, a, s, t).ok:
                    failures.append({"additivity": a.to_json()})
            for a, b in itertools.permutations(roots, 2):
                if a == -b:
                    continue
                s, t = ring.random(rng), ring.random(rng)
                r = chv.verify_commutator_formula(n, a, b, s, t, table)
                checked += 1
                if not r.ok:
                    failed += 1
                    failures.append(r.to_json())
    except chv.InconsistencyError as e:
        return Case(f"SL{n}", "fail", f"structure constants inconsistent: {e}")
    status = "fail" if failures else "pass"
    return Case(f"SL{n}", status,
                f"{checked - failed}/{checked} commutators, {additivity} additivity checks",
                {"samples": samples, "formula_checks": checked, "additivity_checks": additivity,
                 "failures": failures[:20], "constants": table.to_json()})


def chevalley_commutator(ns: Sequence[int], ring_text: str, samples: int = 50,
                         seed: int = DEFAULT_SEED) -> VerificationReport:
    _ring(ring_text)
    if any(n < 2 for n in ns):
        raise InputError("--n must be at least 2")
    rep = VerificationReport("chevalley commutator", {"n": list(ns), "ring": ring_text,
                                                      "samples": samples, "seed": seed})
    for c in run_cases(commutator_case, [(n, ring_text, samples, seed) for n in ns]):
        rep.add(c)
    return rep


def chevalley_fukunaga(ns: Sequence[int], ring_text: str, variant: str = "lowest") -> VerificationReport:
    ring = _ring(ring_text)
    rep = VerificationReport("chevalley fukunaga", {"n": list(ns), "ring": ring_text, "variant": variant})
    for n in ns:
        try:
            fam = chv.fukunaga_generator_family(n, ring.gens(), variant, ring)
        except ValueError as e:
            raise InputError(str(e)) from None
        except ArithmeticError as e:
            rep.add(Case(f"SL{n}", "fail", str(e)))
            continue
        dg = chv.digraph_acyclicity(n, list(fam))
        detail = {"roots": [a.to_json() for a in fam], "generators": sum(len(v) for v in fam.values()),
                  "digraph": dg.to_json()}
        rep.add(Case(f"SL{n}", "pass",
                     f"{detail['generators']} generators of determinant 1; digraph "
                     + ("acyclic" if dg.acyclic else "cyclic"), detail))
    return rep


def parse_subset(n: int, text: str, variant: str = "lowest") -> list[tuple[str, list]]:
    """Named subsets: simple, full, proper (every proper subset), or i,j;k,l."""
    coll = chv.collection_roots(n, variant)
    simple = [chv.TypeARoot(i, i + 1) for i in range(1, n)]
    if text == "simple":
        return [("simple", simple)]
    if text == "full":
        return [("full", coll)]
    if text == "proper":
        out = []
        for k in range(1, len(coll)):
            for sub in itertools.combinations(coll, k):
                out.append((" ".join(str(a) for a in sub), list(sub)))
        return out
    try:
        roots = [chv.TypeARoot(*map(int, part.split(","))) for part in text.split(";") if part.strip()]
    except (ValueError, TypeError) as e:
        raise InputError(f"--subset {text!r}: {e}") from None
    return [(text, roots)]


def nilpotency_case(n: int, key: str, roots: list, ring_text: str, is_full: bool,
                    class_bound: int | None) -> Case:
    ring = RingSpec.parse(ring_text)
    try:
        r = chv.subset_nilpotency(n, roots, ring, class_bound)
    except chv.InconsistencyError as e:
        return Case(key, "fail", str(e))
    detail = r.to_json()
    if r.status == "nilpotent":
        within = r.nilpotency_class is not None and r.nilpotency_class <= n - 1
        status = "pass" if within or is_full else "fail"
        return Case(key, status, f"nilpotent of class {r.nilpotency_class} (<= {n - 1})" if within
                    else f"nilpotent of class {r.nilpotency_class}", detail)
    summary = ("non-nilpotent within bound" if r.status == "non-nilpotent"
               else "lower central series does not terminate within bound")
    summary += "; digraph " + ("acyclic" if r.digraph.acyclic else "cyclic")
    return Case(key, "infeasible-as-expected" if is_full else "fail", summary, detail)


def chevalley_nilpotency(n: int, subset: str, ring_text: str, variant: str = "lowest",
                         class_bound: int | None = None) -> VerificationReport:
    ring = _ring(ring_text)
    if not ring.is_finite:
        raise InputError(f"--ring: nilpotency closure needs a finite ring, got {ring}")
    if n < 3:
        raise InputError("--n must be at least 3")
    coll = set(chv.collection_roots(n, variant))
    cases = [(n, key, roots, ring_text, set(roots) >= coll, class_bound)
             for key, roots in parse_subset(n, subset, variant)]
    rep = VerificationReport("chevalley nilpotency", {"n": n, "subset": subset, "ring": ring_text,
                                                      "variant": variant, "class_bound": class_bound})
    for c in run_cases(nilpotency_case, cases):
        rep.add(c)
    return rep


def chevalley_ppower(ns: Sequence[int], ring_text: str = "Z[x]") -> VerificationReport:
    ring = _ring(ring_text)
    t = ring.gens()[0] if ring.variables else ring.one
    rep = VerificationReport("chevalley ppower", {"n": list(ns), "ring": ring_text})
    for n in ns:
        bad, wits = [], []
        for a in type_a_roots(n):
            w = chv.p_power_witness(n, a, t)
            wits.append(w.to_json())
            if not w.ok:
                bad.append(a.to_json())
        rep.add(Case(f"SL{n}", "fail" if bad else "pass",
                     f"{len(wits) - len(bad)}/{len(wits)} roots decompose with p = 1",
                     {"failures": bad, "witnesses": wits}))
    return rep


# ------------------------------------------------------------------- helly


def _family(path: str) -> ConvexFamily:
    return _wrap(path, ConvexFamily.from_json, load_json(path))


def helly_nerve(path: str, max_dim: int | None = None) -> VerificationReport:
    fam = _family(path)
    n = nerve(fam, max_dim)
    prof = reduced_homology(n)
    rep = VerificationReport("helly nerve", {"file": Path(path).name, "max_dim": max_dim})
    betti = list(prof.trimmed().betti)
    rep.add(Case(Path(path).stem, "pass", f"f-vector {list(n.f_vector())}, reduced betti {betti}",
                 {"nerve": n.to_json(), "homology": prof.to_json()}))
    return rep


def _helly_case(key: str, fam: ConvexFamily) -> Case:
    r = helly_verify(fam)
    if r.violation:
        return Case(key, "fail", "hypothesis holds but the total intersection is empty", r.to_json())
    if r.hypothesis:
        return Case(key, "pass", f"total intersection nonempty ({r.mode})", r.to_json())
    return Case(key, "pass", f"hypothesis fails; conclusion {str(r.conclusion).lower()}; no violation",
                r.to_json())


def helly_verify_file(path: str) -> VerificationReport:
    fam = _family(path)
    rep = VerificationReport("helly verify", {"file": Path(path).name})
    try:
        rep.add(_helly_case(Path(path).stem, fam))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None
    return rep


def random_trial(model: str, seed: int, i: int, dim: int | None) -> tuple[bool, bool, bool]:
    """(hypothesis, conclusion, witness ok) for one seeded random family."""
    rng = random.Random(f"{model}:{seed}:{i}")
    fam = random_subtree_family(rng) if model == "tree" else random_box_family(rng, dim)
    r = helly_verify(fam)
    ok = r.conclusion and r.witness is not None
    return r.hypothesis, r.conclusion, ok


def helly_random(model: str, trials: int, seed: int = DEFAULT_SEED, dim: int | None = None) -> VerificationReport:
    if model not in ("tree", "box"):
        raise InputError(f"--model must be tree or box, got {model!r}")
    if dim is not None and not 1 <= dim <= 3:
        raise InputError("--dim must be 1, 2 or 3")
    rep = VerificationReport("helly verify", {"model": model, "random": trials, "seed": seed, "dim": dim})
    res = run_cases(random_trial, [(model, seed, i, dim) for i in range(trials)])
    hyp = sum(1 for h, _, _ in res if h)
    fails = [i for i, (h, c, ok) in enumerate(res) if h and not (c and ok)]
    status = "fail" if fails else "pass"
    rep.add(Case(f"{model}-random", status, f"{hyp - len(fails)}/{trials} pass",
                 {"trials": trials, "hypothesis_held": hyp, "failures": fails}))
    return rep


def helly_leray(path: str) -> VerificationReport:
    fam = _family(path)
    try:
        r = leray_consistency(fam)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None
    rep = VerificationReport("helly leray", {"file": Path(path).name})
    if not r.applicable:
        status, summary = "infeasible-as-expected", "Leray inapplicable: " + ", ".join(map(str, r.offending))
    elif r.equal:
        status = "pass"
        summary = f"profiles equal, reduced betti {list(r.nerve_profile.trimmed().betti)}"
    else:
        status, summary = "fail", "profiles differ"
    rep.add(Case(Path(path).stem, status, summary, r.to_json()))
    return rep


# -------------------------------------------------------------------- trees


def _action(path: str):
    data = load_json(path)
    return _wrap(path, load_action, data)


def _point_str(p) -> str:
    return str(p)


def tree_classify(path: str) -> VerificationReport:
    tree, gens = _action(path)
    rep = VerificationReport("tree classify", {"file": Path(path).name})
    for name in sorted(gens):
        c = classify(tree, gens[name])
        if c.kind == "inconclusive":
            rep.add(Case(name, "inconclusive", c.reason, c.to_json()))
            continue
        if c.kind == "elliptic":
            pts = c.fix.points(tree) if isinstance(tree, MetricTree) else sorted(c.fix.vertices)
            summary = "elliptic, Fix = {" + ", ".join(map(str, pts)) + "}"
        else:
            summary = f"hyperbolic, tau = {c.tau}, axis of {len(c.axis)} vertices in the ball"
        rep.add(Case(name, "pass", summary, c.to_json()))
    return rep


def tree_fix(path: str) -> VerificationReport:
    tree, gens = _action(path)
    rep = VerificationReport("tree fix", {"file": Path(path).name})
    for name in sorted(gens):
        c = classify(tree, gens[name])
        if c.kind == "elliptic":
            host = tree if isinstance(tree, MetricTree) else tree.ball()[0]
            pts = [p.to_json() for p in c.fix.points(host)]
            rep.add(Case(name, "pass", "Fix = {" + ", ".join(str(p) for p in c.fix.points(host)) + "}",
                         {"fix": c.fix.to_json(), "points": pts}))
        elif c.kind == "hyperbolic":
            rep.add(Case(name, "infeasible-as-expected", f"hyperbolic (tau = {c.tau}): no fixed points",
                         c.to_json()))
        else:
            rep.add(Case(name, "inconclusive", c.reason, c.to_json()))
    return rep


def tree_common(path: str) -> VerificationReport:
    tree, gens = _action(path)
    names = sorted(gens)
    rep = VerificationReport("tree common", {"file": Path(path).name})
    kinds = {n: classify(tree, gens[n]).kind for n in names}
    if any(k != "elliptic" for k in kinds.values()):
        rep.add(Case("common", "infeasible-as-expected",
                     "not every generator is elliptic: " + ", ".join(f"{n} {k}" for n, k in kinds.items()),
                     {"kinds": kinds}))
        return rep
    r = common_fixed_point(tree, [gens[n] for n in names])
    detail = r.to_json()
    if r.point is None:
        i, j = r.disjoint_pair
        rep.add(Case("common", "infeasible-as-expected",
                     f"no common fixed point: Fix({names[i]}) and Fix({names[j]}) are disjoint", detail))
        return rep
    if isinstance(tree, MetricTree):
        spec = ActionSpec(tree, gens)
        detail["group_fixed_point"] = finite_group_fixed_point(tree, spec).to_json()
    rep.add(Case("common", "pass", f"common fixed point {r.point}", detail))
    return rep
