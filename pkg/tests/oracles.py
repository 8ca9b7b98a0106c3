"""Independent reference computations used only by the tests.

Nothing here imports the package's own algorithms: roots come from
ambient coordinates, linear feasibility from Fourier-Motzkin elimination,
Lannér diagrams from a brute-force search with a floating determinant.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import mpmath

# --------------------------------------------------------------- root systems


def _signs(k):
    return itertools.product((1, -1), repeat=k)


def _unit(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def ambient_roots(family: str, rank: int) -> list[tuple[Fraction, ...]]:
    """Roots in the usual Euclidean coordinates."""
    F = Fraction
    out = set()
    if family == "A":
        n = rank + 1
        for i, j in itertools.permutations(range(n), 2):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.add(tuple(map(F, v)))
    elif family in "BCD":
        n = rank
        for i, j in itertools.combinations(range(n), 2):
            for si, sj in _signs(2):
                v = [0] * n
                v[i], v[j] = si, sj
                out.add(tuple(map(F, v)))
        if family != "D":
            c = 1 if family == "B" else 2
            for i in range(n):
                for s in (1, -1):
                    out.add(tuple(map(F, _unit(n, i, s * c))))
    elif family == "F":
        for i, j in itertools.combinations(range(4), 2):
            for si, sj in _signs(2):
                v = [0] * 4
                v[i], v[j] = si, sj
                out.add(tuple(map(F, v)))
        for i in range(4):
            for s in (1, -1):
                out.add(tuple(map(F, _unit(4, i, s))))
        for sg in _signs(4):
            out.add(tuple(F(s, 2) for s in sg))
    elif family == "G":
        # inside the plane x+y+z = 0
        for i, j in itertools.permutations(range(3), 2):
            v = [0] * 3
            v[i], v[j] = 1, -1
            out.add(tuple(map(F, v)))
        for i in range(3):
            for s in (1, -1):
                v = [-s] * 3
                v[i] = 2 * s
                out.add(tuple(map(F, v)))
    elif family == "E":
        e8 = _e8()
        if rank == 8:
            return sorted(e8)
        # E7: orthogonal to one root; E6: orthogonal to an A2 inside E8
        fixed = [(F(0),) * 6 + (F(1), F(1))]
        if rank == 6:
            fixed.append((F(0),) * 5 + (F(1), F(-1), F(0)))
        return sorted(r for r in e8 if all(_dot(r, f) == 0 for f in fixed))
    return sorted(out)


def _e8():
    F = Fraction
    out = set()
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in _signs(2):
            v = [0] * 8
            v[i], v[j] = si, sj
            out.add(tuple(map(F, v)))
    for sg in _signs(8):
        if sg.count(-1) % 2 == 0:
            out.add(tuple(F(s, 2) for s in sg))
    return out


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def pairing_profile(roots, inner) -> Counter:
    """Multiset of inner products (scaled by the longest squared length).

    Isometric root systems have equal profiles, so this compares the
    package's Gram-form roots with ambient ones without choosing a base.
    """
    top = max(inner(a, a) for a in roots)
    return Counter(Fraction(inner(a, b)) / top for a in roots for b in roots)


def coxeter_number(family: str, rank: int) -> int:
    """h = |roots| / rank, from the ambient enumeration."""
    return len(ambient_roots(family, rank)) // rank


# ------------------------------------------------------- linear feasibility


def fm_feasible(rows, rhs) -> bool:
    """Fourier-Motzkin: is {x : rows x <= rhs} nonempty?"""
    sys_ = [([Fraction(a) for a in r], Fraction(b)) for r, b in zip(rows, rhs)]
    if not sys_:
        return True
    n = len(sys_[0][0])
    for k in range(n):
        pos = [(r, b) for r, b in sys_ if r[k] > 0]
        neg = [(r, b) for r, b in sys_ if r[k] < 0]
        rest = [(r, b) for r, b in sys_ if r[k] == 0]
        for (rp, bp), (rn, bn) in itertools.product(pos, neg):
            cp, cn = rp[k], -rn[k]
            rest.append(([cn * x + cp * y for x, y in zip(rp, rn)], cn * bp + cp * bn))
        sys_ = rest
    return all(b >= 0 for _, b in sys_)


# ----------------------------------------------------------------- Coxeter


def cosine_det(labels, dps: int = 60):
    """Determinant of the cosine Gram matrix in floating point (mpmath LU)."""
    with mpmath.workdps(dps):
        n = len(labels)
        m = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                m[i, j] = 1 if i == j else -mpmath.cos(mpmath.pi / labels[i][j])
        return mpmath.det(m)


def _triangle_spherical(p, q, r) -> bool:
    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1


def _canonical(labels):
    n = len(labels)
    return min(
        tuple(labels[p[i]][p[j]] for i in range(n) for j in range(i + 1, n))
        for p in itertools.permutations(range(n))
    )


def lanner_search_rank4(max_label: int = 6) -> set:
    """All compact hyperbolic rank-4 Coxeter simplices, up to relabelling.

    Brute force over labels 2..max_label: every rank-3 subdiagram
    spherical (triangle inequality test), connected, determinant < 0.
    """
    found = set()
    pairs = list(itertools.combinations(range(4), 2))
    for vals in itertools.product(range(2, max_label + 1), repeat=6):
        lab = [[1] * 4 for _ in range(4)]
        for (i, j), m in zip(pairs, vals):
            lab[i][j] = lab[j][i] = m
        if not all(_triangle_spherical(lab[a][b], lab[a][c], lab[b][c])
                   for a, b, c in itertools.combinations(range(4), 3)):
            continue
        if not _connected(lab):
            continue
        key = _canonical(lab)
        if key in found:
            continue
        if cosine_det(lab, 40) < -mpmath.mpf(10) ** -20:
            found.add(key)
    return found


def _connected(lab) -> bool:
    n = len(lab)
    seen, todo = {0}, [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if j not in seen and lab[i][j] != 2:
                seen.add(j)
                todo.append(j)
    return len(seen) == n


def canonical(labels) -> tuple:
    return _canonical([list(r) for r in labels])
