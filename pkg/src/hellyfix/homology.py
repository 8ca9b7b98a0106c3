"""Finite simplicial complexes and their reduced integral homology."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

__all__ = [
    "SimplicialComplex",
    "HomologyProfile",
    "smith_normal_form",
    "boundary_matrices",
    "reduced_homology",
]


def _vertex_key(v):
    return (type(v).__name__, v) if not isinstance(v, (int, str)) else (0 if isinstance(v, int) else 1, v)


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets.

    ``vertices`` fixes the orientation order; faces are tuples listed in
    that order. ``max_dim`` caps the face lattice (None means no cap).
    """

    vertices: tuple
    facets: tuple[tuple, ...]
    max_dim: int | None = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]], vertices: Sequence | None = None,
                    max_dim: int | None = None) -> "SimplicialComplex":
        sets = {frozenset(f) for f in facets if len(frozenset(f))}
        if vertices is None:
            vertices = sorted(set().union(*sets) if sets else set(), key=_vertex_key)
        else:
            vertices = tuple(vertices)
            if len(set(vertices)) != len(vertices):
                raise ValueError("duplicate vertex labels")
            extra = set().union(*sets) - set(vertices) if sets else set()
            if extra:
                raise ValueError(f"facets use undeclared vertices {sorted(map(str, extra))}")
            # isolated vertices count as 0-dimensional facets
            sets |= {frozenset([v]) for v in vertices}
        maximal = [s for s in sets if not any(s < t for t in sets)]
        order = {v: i for i, v in enumerate(vertices)}
        facets_t = sorted(
            (tuple(sorted(s, key=order.__getitem__)) for s in maximal),
            key=lambda f: (len(f), [order[v] for v in f]),
        )
        return cls(tuple(vertices), tuple(facets_t), max_dim)

    @cached_property
    def _order(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dim(self) -> int:
        top = max((len(f) - 1 for f in self.facets), default=-1)
        return top if self.max_dim is None else min(top, self.max_dim)

    @cached_property
    def _faces(self) -> list[list[tuple]]:
        by_dim: list[set] = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            for k in range(min(len(f), self.dim + 1)):
                by_dim[k].update(itertools.combinations(f, k + 1))
        key = lambda face: [self._order[v] for v in face]  # noqa: E731
        return [sorted(s, key=key) for s in by_dim]

    def faces(self, k: int) -> list[tuple]:
        if k < 0 or k > self.dim:
            return []
        return self._faces[k]

    def face_set(self) -> set[frozenset]:
        return {frozenset(f) for k in range(self.dim + 1) for f in self._faces[k]}

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= frozenset(f) for f in self.facets) and (
            self.max_dim is None or len(face) - 1 <= self.max_dim
        )

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._faces[k]) for k in range(self.dim + 1))

    def relabel(self, mapping) -> "SimplicialComplex":
        verts = [mapping[v] for v in self.vertices]
        return SimplicialComplex.from_facets(
            [[mapping[v] for v in f] for f in self.facets], vertices=verts, max_dim=self.max_dim
        )

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Subcomplex of faces common to both (vertex labels are shared)."""
        common = self.face_set() & other.face_set()
        order = self._order
        verts = [v for v in self.vertices if frozenset([v]) in common]
        return SimplicialComplex.from_facets(common, vertices=sorted(verts, key=order.__getitem__))

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        verts = list(self.vertices) + [v for v in other.vertices if v not in self._order]
        return SimplicialComplex.from_facets(list(self.facets) + list(other.facets), vertices=verts)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, list):
            return cls.from_facets(data)
        return cls.from_facets(data["facets"], vertices=data.get("vertices"))


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Rank and invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            moved = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if moved:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        factors.append(abs(a[t][t]))
        t += 1
    return len(factors), tuple(factors)


def boundary_matrices(sc: SimplicialComplex) -> list[list[list[int]]]:
    """Oriented boundaries d_1..d_dim; d_k has rows = (k-1)-faces, cols = k-faces.

    The edge (v0, v1) maps to v1 - v0. ``d_k d_{k+1} = 0`` is asserted.
    """
    mats = []
    for k in range(1, sc.dim + 1):
        lower = {f: i for i, f in enumerate(sc.faces(k - 1))}
        upper = sc.faces(k)
        m = [[0] * len(upper) for _ in lower]
        for c, f in enumerate(upper):
            for i in range(len(f)):
                m[lower[f[:i] + f[i + 1:]]][c] += -1 if i % 2 else 1
        mats.append(m)
    for d1, d2 in zip(mats, mats[1:]):
        for row in d1:
            for c in range(len(d2[0]) if d2 else 0):
                if sum(row[j] * d2[j][c] for j in range(len(row)) if row[j]):
                    raise ArithmeticError("boundary of a boundary is nonzero")
    return mats


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers and torsion factors, indexed by dimension.

    The empty complex has ``empty=True`` and (reduced) homology Z in
    degree -1, which is not stored in ``betti``.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    empty: bool = False

    def __post_init__(self):
        if any(b < 0 for b in self.betti):
            raise ValueError("negative Betti number")
        for fs in self.torsion:
            if any(f <= 1 for f in fs) or any(b % a for a, b in zip(fs, fs[1:])):
                raise ValueError(f"bad torsion factors {fs}")

    def trimmed(self) -> "HomologyProfile":
        """Drop trailing trivial degrees so profiles of different dimension compare."""
        n = len(self.betti)
        while n and self.betti[n - 1] == 0 and not self.torsion[n - 1]:
            n -= 1
        return HomologyProfile(self.betti[:n], self.torsion[:n], self.empty)

    @property
    def is_acyclic(self) -> bool:
        return not self.empty and not any(self.betti) and not any(self.torsion)

    def to_json(self) -> dict:
        return {"empty": self.empty, "reduced_betti": list(self.betti),
                "torsion": [list(t) for t in self.torsion]}


def reduced_homology(sc: SimplicialComplex) -> HomologyProfile:
    if sc.is_empty:
        return HomologyProfile((), (), empty=True)
    d = sc.dim
    ranks = [1]  # augmentation C_0 -> Z
    factors: list[tuple[int, ...]] = []
    for m in boundary_matrices(sc):
        r, f = smith_normal_form(m)
        ranks.append(r)
        factors.append(tuple(x for x in f if x > 1))
    ranks.append(0)
    factors.append(())
    betti = tuple(len(sc.faces(k)) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return HomologyProfile(betti, tuple(factors[: d + 1]))
