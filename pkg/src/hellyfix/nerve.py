"""Nerves of set families and Helly / Leray checks on model spaces.

Three models decide intersections exactly:

* ``tree``: subtrees of a finite tree given by vertex sets (a subtree is
  the union of its vertices and the edges between them, so two subtrees
  meet iff they share a vertex);
* ``polytope``: rational polyhedra ``A x <= b`` in R^n, decided by exact
  linear feasibility;
* ``complex``: subcomplexes of one ambient simplicial complex, intersected
  face by face.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import _linalg as la
from .homology import HomologyProfile, SimplicialComplex, reduced_homology
from .lp import feasible_point

__all__ = [
    "ConvexFamily",
    "FamilyError",
    "HellyReport",
    "LerayReport",
    "nerve",
    "helly_verify",
    "leray_consistency",
    "random_tree_edges",
    "random_subtree_family",
    "random_box_family",
]

MODELS = ("tree", "polytope", "complex")


class FamilyError(ValueError):
    pass


def _adjacency(edges) -> dict:
    adj: dict = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _check_tree(vertices, edges) -> None:
    adj = _adjacency(edges)
    for v in vertices:
        adj.setdefault(v, set())
    if len(edges) != len(adj) - 1:
        raise FamilyError(f"not a tree: {len(adj)} vertices, {len(edges)} edges")
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) != len(adj):
        raise FamilyError("not a tree: disconnected")


def _connected_in(adj, members: frozenset) -> bool:
    start = next(iter(members))
    seen = {start}
    todo = [start]
    while todo:
        for w in adj[todo.pop()]:
            if w in members and w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(members)


@dataclass(frozen=True)
class ConvexFamily:
    """A finite family of convex (or acyclic) sets in one model space.

    ``members`` holds frozensets of vertices (tree), ``(A, b)`` pairs
    (polytope) or SimplicialComplex values (complex). ``ambient`` is the
    edge list of the tree or the ambient complex; ``dim`` is the dimension
    used by the Helly check.
    """

    model: str
    members: tuple
    dim: int
    ambient: Any = None
    names: tuple = ()

    def __post_init__(self):
        if self.model not in MODELS:
            raise FamilyError(f"unknown model {self.model!r}")
        if not self.members:
            raise FamilyError("empty family")
        if not self.names:
            object.__setattr__(self, "names", tuple(range(len(self.members))))

    # constructors validate members
    @classmethod
    def subtrees(cls, edges, members, names=()) -> "ConvexFamily":
        edges = [tuple(e) for e in edges]
        verts = {v for e in edges for v in e}
        mems = [frozenset(m) for m in members]
        if not verts:  # single-vertex tree
            verts = set().union(*mems)
            if len(verts) != 1:
                raise FamilyError("edgeless tree must have exactly one vertex")
        _check_tree(verts, edges)
        adj = _adjacency(edges)
        for v in verts:
            adj.setdefault(v, set())
        for i, m in enumerate(mems):
            if not m:
                raise FamilyError(f"member {i} is empty")
            if not m <= verts:
                raise FamilyError(f"member {i} uses vertices outside the tree")
            if not _connected_in(adj, m):
                raise FamilyError(f"member {i} is not a subtree (not connected)")
        return cls("tree", tuple(mems), 1, tuple(edges), tuple(names))

    @classmethod
    def polytopes(cls, members, dim: int | None = None, names=()) -> "ConvexFamily":
        mems = []
        for i, (a, b) in enumerate(members):
            a = la.to_fractions(a)
            b = [la.parse_frac(x) for x in b]
            if dim is None:
                dim = len(a[0])
            if any(len(r) != dim for r in a) or len(a) != len(b):
                raise FamilyError(f"member {i} has inconsistent shape")
            if feasible_point(a, b, nvars=dim) is None:
                raise FamilyError(f"member {i} is empty")
            mems.append((tuple(map(tuple, a)), tuple(b)))
        return cls("polytope", tuple(mems), dim, None, tuple(names))

    @classmethod
    def subcomplexes(cls, members, ambient: SimplicialComplex | None = None, names=()) -> "ConvexFamily":
        mems = [m if isinstance(m, SimplicialComplex) else SimplicialComplex.from_facets(m) for m in members]
        if ambient is None:
            amb = mems[0]
            for m in mems[1:]:
                amb = amb.union(m)
        else:
            amb = ambient
        faces = amb.face_set()
        for i, m in enumerate(mems):
            if m.is_empty:
                raise FamilyError(f"member {i} is empty")
            if not m.face_set() <= faces:
                raise FamilyError(f"member {i} is not a subcomplex of the ambient complex")
        return cls("complex", tuple(mems), amb.dim, amb, tuple(names))

    @classmethod
    def from_json(cls, data) -> "ConvexFamily":
        model = data.get("model")
        names = tuple(data.get("names", ()))
        if model == "tree":
            return cls.subtrees(data["edges"], data["members"], names)
        if model == "polytope":
            return cls.polytopes([(m["A"], m["b"]) for m in data["members"]], data.get("dim"), names)
        if model == "complex":
            amb = data.get("ambient")
            amb = SimplicialComplex.from_json(amb) if amb is not None else None
            return cls.subcomplexes([SimplicialComplex.from_json(m) for m in data["members"]], amb, names)
        raise FamilyError(f"unknown model {model!r}")

    def __len__(self):
        return len(self.members)

    def intersection_witness(self, idx: Sequence[int]):
        """A point of the intersection of the chosen members, or None."""
        idx = list(idx)
        if self.model == "tree":
            common = frozenset.intersection(*(self.members[i] for i in idx))
            return min(common, key=repr) if common else None
        if self.model == "polytope":
            rows, rhs = [], []
            for i in idx:
                a, b = self.members[i]
                rows.extend(a)
                rhs.extend(b)
            return feasible_point(rows, rhs, nvars=self.dim)
        common = set.intersection(*(set(self.members[i].vertices) for i in idx))
        return min(common, key=repr) if common else None

    def intersection_complex(self, idx: Sequence[int]) -> SimplicialComplex:
        if self.model != "complex":
            raise FamilyError("intersection complexes exist only in the complex model")
        out = self.members[idx[0]]
        for i in idx[1:]:
            out = out.intersection(self.members[i])
        return out


def nerve(family: ConvexFamily, max_dim: int | None = None) -> SimplicialComplex:
    """Faces are the index sets with nonempty intersection (up to max_dim)."""
    m = len(family)
    cap = m - 1 if max_dim is None else min(max_dim, m - 1)
    faces = [(i,) for i in range(m)]
    level = faces[:]
    for k in range(1, cap + 1):
        present = set(level)
        nxt = []
        for f in level:
            for j in range(f[-1] + 1, m):
                cand = f + (j,)
                # every facet of a face must itself be a face
                if all(cand[:p] + cand[p + 1:] in present for p in range(k)):
                    if family.intersection_witness(cand) is not None:
                        nxt.append(cand)
        faces.extend(nxt)
        level = nxt
        if not level:
            break
    return SimplicialComplex.from_facets(faces, vertices=list(range(m)), max_dim=cap)


def _json_point(p):
    if isinstance(p, list):
        return [la.frac_str(x) for x in p]
    return p


@dataclass(frozen=True)
class HellyReport:
    model: str
    dim: int
    size: int
    hypothesis: bool
    conclusion: bool
    witness: Any
    failed_subset: tuple[int, ...] | None
    failed_reason: str | None
    mode: str  # verified | sampled

    @property
    def violation(self) -> bool:
        return self.hypothesis and not self.conclusion

    def to_json(self) -> dict:
        return {
            "model": self.model, "dim": self.dim, "size": self.size,
            "hypothesis": self.hypothesis, "conclusion": self.conclusion,
            "witness": _json_point(self.witness),
            "failed_subset": list(self.failed_subset) if self.failed_subset else None,
            "failed_reason": self.failed_reason, "mode": self.mode, "violation": self.violation,
        }


def helly_verify(family: ConvexFamily, max_checks: int = 200_000, seed: int = 0) -> HellyReport:
    """Check the Helly hypothesis and the conclusion on one family.

    Hypothesis: every subfamily of at most n+1 members meets, and (in the
    complex model, where convexity gives nothing) every intersection of at
    most n members is a homology cell. In the tree and polytope models
    intersections are convex, hence cells. When there are more subsets
    than ``max_checks`` a seeded sample is checked and the report says
    ``sampled``.
    """
    n = family.dim
    m = len(family)
    if family.model == "complex":
        prof = reduced_homology(family.ambient)
        if not prof.is_acyclic:
            raise FamilyError("Helly check in the complex model needs an acyclic ambient complex")
    sizes = range(1, min(n + 1, m) + 1)
    total = sum(math.comb(m, r) for r in sizes)
    if total <= max_checks:
        subsets = (c for r in sizes for c in itertools.combinations(range(m), r))
        mode = "verified"
    else:
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(m), rng.choice(list(sizes))))) for _ in range(max_checks))
        mode = "sampled"
    hyp, failed, reason = True, None, None
    for idx in subsets:
        if family.intersection_witness(idx) is None:
            hyp, failed, reason = False, idx, "empty intersection"
            break
        if family.model == "complex" and len(idx) <= n:
            if not reduced_homology(family.intersection_complex(idx)).is_acyclic:
                hyp, failed, reason = False, idx, "intersection is not a homology cell"
                break
    w = family.intersection_witness(range(m))
    return HellyReport(family.model, n, m, hyp, w is not None, w, failed, reason, mode)


@dataclass(frozen=True)
class LerayReport:
    applicable: bool
    offending: tuple[int, ...] | None
    union_profile: HomologyProfile
    nerve_profile: HomologyProfile | None
    equal: bool | None

    @property
    def status(self) -> str:
        if not self.applicable:
            return "Leray inapplicable"
        return "profiles equal" if self.equal else "profiles differ"

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "offending_intersection": list(self.offending) if self.offending else None,
            "union": self.union_profile.to_json(),
            "nerve": self.nerve_profile.to_json() if self.nerve_profile else None,
            "equal": self.equal, "status": self.status,
        }


def leray_consistency(family: ConvexFamily) -> LerayReport:
    """Compare the homology of the union with that of the nerve.

    The hypothesis gate checks every nonempty intersection of members for
    acyclicity; the first failure makes the report inapplicable.
    """
    if family.model != "complex":
        raise FamilyError("Leray check runs on the complex model")
    m = len(family)
    union = family.members[0]
    for sc in family.members[1:]:
        union = union.union(sc)
    uprof = reduced_homology(union)
    for r in range(1, m + 1):
        for idx in itertools.combinations(range(m), r):
            inter = family.intersection_complex(idx)
            if inter.is_empty:
                continue
            if not reduced_homology(inter).is_acyclic:
                return LerayReport(False, idx, uprof, None, None)
    nprof = reduced_homology(nerve(family))
    return LerayReport(True, None, uprof, nprof, uprof.trimmed() == nprof.trimmed())


# ------------------------------------------------------------ random families


def random_tree_edges(rng: random.Random, nverts: int) -> list[tuple[int, int]]:
    """Random labelled tree: each vertex attaches to an earlier one."""
    return [(rng.randrange(v), v) for v in range(1, nverts)]


def _tree_path(adj, a, b) -> list:
    prev = {a: None}
    q = deque([a])
    while q:
        x = q.popleft()
        if x == b:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                q.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path


def _tree_hull(adj, points) -> frozenset:
    pts = list(points)
    out = {pts[0]}
    for p in pts[1:]:
        out.update(_tree_path(adj, pts[0], p))
    return frozenset(out)


def random_subtree_family(rng: random.Random, nverts: int | None = None, k: int | None = None) -> ConvexFamily:
    """Random subtrees with every pair meeting.

    Each pair (i, j) gets a random meeting vertex; member i is the convex
    hull of its meeting vertices plus a couple of random extra vertices.
    """
    nverts = nverts or rng.randint(2, 25)
    k = k or rng.randint(2, 7)
    edges = random_tree_edges(rng, nverts)
    adj = _adjacency(edges)
    adj.setdefault(0, set())
    pts: list[list[int]] = [[] for _ in range(k)]
    for i, j in itertools.combinations(range(k), 2):
        v = rng.randrange(nverts)
        pts[i].append(v)
        pts[j].append(v)
    for i in range(k):
        pts[i].extend(rng.randrange(nverts) for _ in range(rng.randint(0, 2)))
        if not pts[i]:
            pts[i].append(rng.randrange(nverts))
    members = [_tree_hull(adj, p) for p in pts]
    return ConvexFamily.subtrees(edges, members)


def _box(lo, hi):
    n = len(lo)
    a, b = [], []
    for d in range(n):
        e = [0] * n
        e[d] = 1
        a.append(e)
        b.append(hi[d])
        a.append([-x for x in e])
        b.append(-lo[d])
    return a, b


def random_box_family(rng: random.Random, dim: int | None = None, k: int | None = None) -> ConvexFamily:
    """Random rational boxes with every (dim+1)-subfamily meeting.

    Every (dim+1)-subset gets a random rational point; each box is the
    bounding box of the points assigned to subsets containing it, padded
    by random rational margins.
    """
    dim = dim or rng.randint(1, 3)
    k = k or rng.randint(dim + 1, dim + 3)

    def rnd():
        return Fraction(rng.randint(-40, 40), rng.randint(1, 6))

    pts: list[list] = [[] for _ in range(k)]
    for sub in itertools.combinations(range(k), min(dim + 1, k)):
        p = [rnd() for _ in range(dim)]
        for i in sub:
            pts[i].append(p)
    members = []
    for i in range(k):
        lo = [min(p[d] for p in pts[i]) - Fraction(rng.randint(0, 3), rng.randint(1, 4)) for d in range(dim)]
        hi = [max(p[d] for p in pts[i]) + Fraction(rng.randint(0, 3), rng.randint(1, 4)) for d in range(dim)]
        members.append(_box(lo, hi))
    return ConvexFamily.polytopes(members, dim)
