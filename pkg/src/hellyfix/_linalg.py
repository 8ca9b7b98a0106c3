"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are anything ``Fraction`` accepts.
Everything here is dense Gaussian elimination, which is plenty for the
rank <= 9 systems this package deals with.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction]
Matrix = Sequence[Sequence[Fraction]]


def to_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def bilinear(gram: Matrix, u: Vector, v: Vector) -> Fraction:
    """Return u^T G v."""
    total = Fraction(0)
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * row[j] * vj
    return total


def mat_vec(m: Matrix, v: Vector) -> list[Fraction]:
    return [dot(row, v) for row in m]


def transpose(m: Matrix) -> list[list[Fraction]]:
    return [list(col) for col in zip(*m)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def row_reduce(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = to_fractions(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(row_reduce(m)[1])


def is_independent(vectors: Sequence[Vector]) -> bool:
    return rank(vectors) == len(vectors)


def solve(m: Matrix, b: Vector) -> list[Fraction] | None:
    """Solve ``m x = b`` for square nonsingular ``m``; None if singular."""
    n = len(m)
    aug = [list(row) + [b[i]] for i, row in enumerate(to_fractions(m))]
    red, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def inverse(m: Matrix) -> list[list[Fraction]] | None:
    n = len(m)
    aug = [list(row) + e for row, e in zip(to_fractions(m), identity(n))]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in red[:n]]


def nullspace(m: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of ``m``."""
    if ncols is None:
        ncols = len(m[0])
    if not m:
        return identity(ncols)
    red, pivots = row_reduce(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def project(gram: Matrix, v: Vector, basis: Sequence[Vector]) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto span(basis) for the form ``gram``."""
    n = len(v)
    if not basis:
        return [Fraction(0)] * n
    g = [[bilinear(gram, a, b) for b in basis] for a in basis]
    rhs = [bilinear(gram, a, v) for a in basis]
    coeffs = solve(g, rhs)
    if coeffs is None:
        raise ValueError("projection basis is linearly dependent")
    out = [Fraction(0)] * n
    for c, a in zip(coeffs, basis):
        for i in range(n):
            out[i] += c * a[i]
    return out


def det(m: Matrix) -> Fraction:
    a = to_fractions(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def frac_str(x: Fraction) -> str:
    """Serialize as "p/q" (always with a denominator, for a stable schema)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.strip())
    if isinstance(s, float):
        raise TypeError(f"refusing float {s!r}; use an integer or a 'p/q' string")
    return Fraction(s)
