"""Coxeter simplex groups: cosine Gram matrices and their signature.

Two independent decision procedures are run on every matrix:

* exact minors: every entry -cos(pi/m) lives in Q(c) with c = cos(pi/L),
  L the lcm of the labels, because cos(k*pi/L) = T_k(c). Determinants are
  computed in Q[x]/(minpoly of c), so zero is decided exactly; the sign of
  a nonzero minor comes from interval evaluation at c with rising
  precision (it cannot be zero, so refinement terminates).
* eigen intervals: symmetric eigen-decomposition at high precision with a
  residual-based enclosure of every eigenvalue.

The two must agree; disagreement raises.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Sequence

import mpmath
import sympy
from mpmath import iv

from .homology import SimplicialComplex, reduced_homology

__all__ = [
    "CoxeterMatrix",
    "CoxeterError",
    "SimplexReport",
    "coxeter_simplex_check",
    "exact_minor_signs",
    "eigen_signature",
    "spherical_triangle",
]

INF = math.inf


class CoxeterError(ValueError):
    pass


def _label(v):
    if v is None:
        return INF
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        v = int(s)
    if isinstance(v, float):
        if v == INF:
            return INF
        if not v.is_integer():
            raise CoxeterError(f"non-integer label {v!r}")
        v = int(v)
    if v <= 0:  # 0 / negative are common encodings of infinity
        return INF
    return int(v)


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise CoxeterError(f"row {i} has length {len(row)}, expected {n}")
            if row[i] != 1:
                raise CoxeterError(f"diagonal entry ({i},{i}) must be 1, got {row[i]}")
            for j, m in enumerate(row):
                if m != self.entries[j][i]:
                    raise CoxeterError(f"not symmetric at ({i},{j})")
                if i != j and m != INF and m < 2:
                    raise CoxeterError(f"off-diagonal entry ({i},{j}) = {m} < 2")

    @classmethod
    def from_rows(cls, rows, name: str = "") -> "CoxeterMatrix":
        entries = []
        for i, row in enumerate(rows):
            entries.append(tuple(1 if i == j and _label(v) == 1 else _label(v) for j, v in enumerate(row)))
        return cls(tuple(entries), name)

    @classmethod
    def from_edges(cls, order: int, labels: dict, name: str = "") -> "CoxeterMatrix":
        """Labels on pairs; missing pairs default to 2 (commuting reflections)."""
        rows = [[1 if i == j else 2 for j in range(order)] for i in range(order)]
        for (i, j), m in labels.items():
            rows[i][j] = rows[j][i] = _label(m)
        return cls(tuple(map(tuple, rows)), name)

    @classmethod
    def triangle(cls, p, q, r, name: str = "") -> "CoxeterMatrix":
        return cls.from_rows([[1, p, q], [p, 1, r], [q, r, 1]], name or f"triangle-{p}{q}{r}")

    @classmethod
    def from_json(cls, data) -> "CoxeterMatrix":
        if isinstance(data, dict):
            if "matrix" in data:
                return cls.from_rows(data["matrix"], data.get("name", ""))
            if "triangle" in data:
                return cls.triangle(*data["triangle"], name=data.get("name", ""))
            raise CoxeterError("expected a 'matrix' or 'triangle' key")
        return cls.from_rows(data)

    @classmethod
    def load(cls, path) -> "CoxeterMatrix":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    @classmethod
    def load_all(cls, path) -> list["CoxeterMatrix"]:
        """A file holding one matrix or ``{"matrices": [...]}``."""
        with open(path) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "matrices" in data:
            return [cls.from_json(m) for m in data["matrices"]]
        return [cls.from_json(data)]

    @property
    def order(self) -> int:
        return len(self.entries)

    @property
    def finite_labels(self) -> bool:
        return all(m != INF for row in self.entries for m in row)

    def submatrix(self, idx: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def to_json(self) -> dict:
        rows = [[("inf" if m == INF else m) for m in row] for row in self.entries]
        return {"name": self.name, "matrix": rows}


def spherical_triangle(p: int, q: int, r: int) -> bool:
    """Rank-3 finiteness by the angle sum: 1/p + 1/q + 1/r > 1."""
    from fractions import Fraction

    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1


# ---------------------------------------------------------------- exact route

_X = sympy.Symbol("x")


@lru_cache(maxsize=None)
def _field(level: int):
    """Minimal polynomial of cos(pi/level).

    cos(pi/L) = (z + 1/z)/2 for a primitive 2L-th root of unity z. The
    cyclotomic polynomial is palindromic of degree 2m, so
    z^-m Phi(z) = c_m + sum_k c_(m+k) (z^k + z^-k) = c_m + 2 sum_k c_(m+k) T_k(x).
    """
    cyc = sympy.Poly(sympy.cyclotomic_poly(2 * level, _X), _X).all_coeffs()[::-1]
    m = (len(cyc) - 1) // 2
    cheb = _chebyshev(m)
    out = sympy.Poly(cyc[m], _X, domain=sympy.QQ)
    for k in range(1, m + 1):
        if cyc[m + k]:
            out += 2 * cyc[m + k] * cheb[k]
    return out.monic()


def _chebyshev(k: int) -> list[sympy.Poly]:
    """T_0 .. T_k by the three-term recurrence."""
    x = sympy.Poly(_X, _X, domain=sympy.QQ)
    out = [sympy.Poly(1, _X, domain=sympy.QQ), x]
    while len(out) <= k:
        out.append(2 * x * out[-1] - out[-2])
    return out[: k + 1]


@lru_cache(maxsize=None)
def _cos_element(level: int, m: int) -> sympy.Poly:
    """-cos(pi/m) as a reduced polynomial in c = cos(pi/level)."""
    return (-_chebyshev(level // m)[-1]).rem(_field(level))


class _Field:
    def __init__(self, level: int):
        self.level = level
        self.modulus = _field(level)
        self.zero = sympy.Poly(0, _X, domain=sympy.QQ)
        self.one = sympy.Poly(1, _X, domain=sympy.QQ)

    def mul(self, a, b):
        return (a * b).rem(self.modulus)

    def inv(self, a):
        return a.invert(self.modulus)

    def det(self, mat: list[list[sympy.Poly]]) -> sympy.Poly:
        n = len(mat)
        if n <= 8:
            return self._laplace(mat)
        a = [row[:] for row in mat]
        out = self.one
        for c in range(n):
            piv = next((i for i in range(c, n) if not a[i][c].is_zero), None)
            if piv is None:
                return self.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                out = -out
            out = self.mul(out, a[c][c])
            inv = self.inv(a[c][c])
            for i in range(c + 1, n):
                if not a[i][c].is_zero:
                    f = self.mul(a[i][c], inv)
                    a[i] = [(x - self.mul(f, y)) for x, y in zip(a[i], a[c])]
        return out

    def _laplace(self, mat):
        # expansion along rows, memoized on the remaining column set; no inverses
        n = len(mat)
        memo = {0: self.one}
        for mask in range(1, 1 << n):
            cols = [j for j in range(n) if mask >> j & 1]
            row = n - len(cols)
            acc = self.zero
            for k, j in enumerate(cols):
                if not mat[row][j].is_zero:
                    term = self.mul(mat[row][j], memo[mask & ~(1 << j)])
                    acc = acc - term if k % 2 else acc + term
            memo[mask] = acc
        return memo[(1 << n) - 1]

    def sign(self, p: sympy.Poly, max_dps: int = 2000) -> int:
        """Sign of p(cos(pi/level)); p is known nonzero in the field."""
        if p.is_zero:
            return 0
        coeffs = [(int(c.numerator), int(c.denominator)) for c in p.all_coeffs()]
        dps = 30
        saved = iv.dps
        try:
            while dps <= max_dps:
                iv.dps = dps
                c = iv.cos(iv.pi / self.level)
                acc = iv.mpf(0)
                for num, den in coeffs:
                    acc = acc * c + iv.mpf(num) / den
                if acc.a > 0:
                    return 1
                if acc.b < 0:
                    return -1
                dps *= 2
        finally:
            iv.dps = saved
        raise ArithmeticError("interval refinement failed to separate a nonzero value from 0")


def _level(cm: CoxeterMatrix) -> int:
    labels = {m for row in cm.entries for m in row if m not in (1, INF)}
    return reduce(math.lcm, labels, 2)


def exact_minor_signs(cm: CoxeterMatrix) -> dict[tuple[int, ...], int]:
    """Sign of the cosine-Gram determinant of every nonempty principal submatrix."""
    if not cm.finite_labels:
        raise CoxeterError("not a simplex group: some label is infinite")
    level = _level(cm)
    fld = _Field(level)
    n = cm.order
    g = [[fld.one if i == j else _cos_element(level, cm.entries[i][j]) for j in range(n)] for i in range(n)]
    out = {}
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            d = fld.det([[g[i][j] for j in idx] for i in idx])
            out[idx] = fld.sign(d)
    return out


def _pd_from_minors(signs: dict, idx: tuple[int, ...]) -> bool:
    return all(signs[idx[:k]] > 0 for k in range(1, len(idx) + 1))


# --------------------------------------------------------------- eigen route


def eigen_signature(cm: CoxeterMatrix, idx: Sequence[int] | None = None, dps: int = 50) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts from certified enclosures.

    An eigenvalue whose enclosure straddles 0 is retried at doubled
    precision; if it still straddles at 4x precision it is counted as zero.
    """
    if idx is None:
        idx = range(cm.order)
    idx = list(idx)
    n = len(idx)
    for attempt in range(3):
        with mpmath.workdps(dps):
            a = mpmath.matrix(n, n)
            for r, i in enumerate(idx):
                for s, j in enumerate(idx):
                    m = cm.entries[i][j]
                    a[r, s] = 1 if i == j else -mpmath.cos(mpmath.pi / m)
            ev, q = mpmath.eigsy(a)
            res = q.T * q - mpmath.eye(n)
            defect = mpmath.sqrt(sum(x**2 for x in res))
            resid = a * q - q * mpmath.diag(ev)
            rnorm = mpmath.sqrt(sum(x**2 for x in resid))
            if defect >= mpmath.mpf("0.5"):
                raise ArithmeticError("eigenvector basis far from orthonormal")
            # Kahan-type bound: |lambda - d| <= ||R||_F / sigma_min(Q), plus input rounding
            radius = rnorm / mpmath.sqrt(1 - defect) + n * mpmath.mpf(10) ** (-(dps - 8))
            pos = sum(1 for e in ev if e - radius > 0)
            neg = sum(1 for e in ev if e + radius < 0)
            zero = n - pos - neg
        if zero == 0 or attempt == 2:
            return pos, zero, neg
        dps *= 2
    raise AssertionError("unreachable")


# -------------------------------------------------------------------- report


@dataclass(frozen=True)
class SimplexReport:
    matrix: CoxeterMatrix
    classification: str  # spherical | euclidean | hyperbolic | not-simplex
    proper_parabolics_finite: bool
    offending: tuple[int, ...] | None
    determinant_sign: int
    eigen_signature: tuple[int, int, int]
    procedures_agree: bool
    nerve_faces: int
    nerve_betti: tuple[int, ...]
    nerve_is_simplex_boundary: bool
    minor_signs: dict = field(repr=False, default_factory=dict)

    @property
    def summary(self) -> str:
        if self.classification == "not-simplex":
            return f"not a simplex reflection group; parabolic on {list(self.offending)} is infinite"
        return f"{self.classification}; all proper parabolics finite"

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "classification": self.classification,
            "proper_parabolics_finite": self.proper_parabolics_finite,
            "offending_subset": list(self.offending) if self.offending else None,
            "determinant_sign": self.determinant_sign,
            "eigen_signature": list(self.eigen_signature),
            "procedures_agree": self.procedures_agree,
            "nerve": {"faces": self.nerve_faces, "reduced_betti": list(self.nerve_betti),
                      "simplex_boundary": self.nerve_is_simplex_boundary},
            "summary": self.summary,
        }


def coxeter_simplex_check(cm: CoxeterMatrix) -> SimplexReport:
    if not cm.finite_labels:
        raise CoxeterError("not a simplex group: some label is infinite")
    n = cm.order
    full = tuple(range(n))
    signs = exact_minor_signs(cm)
    finite = {idx for idx in signs if _pd_from_minors(signs, idx)}
    proper = [idx for idx in signs if len(idx) < n]
    offending = next((idx for idx in proper if idx not in finite), None)

    # eigen route on the maximal proper submatrices and the full matrix
    eig_ok = True
    for drop in range(n):
        idx = tuple(i for i in full if i != drop)
        if not idx:
            continue
        pos, zero, neg = eigen_signature(cm, idx)
        eig_ok &= (pos == len(idx)) == (idx in finite)
    sig = eigen_signature(cm)

    det_sign = signs[full]
    if offending is not None:
        cls = "not-simplex"
    elif det_sign > 0:
        cls = "spherical"
    elif det_sign == 0:
        cls = "euclidean"
    else:
        cls = "hyperbolic"

    if cls != "not-simplex":
        eig_cls = {(n, 0, 0): "spherical", (n - 1, 1, 0): "euclidean", (n - 1, 0, 1): "hyperbolic"}.get(sig)
        eig_ok &= eig_cls == cls
    else:
        # exact route says some proper block is not PD; eigen route must see that too
        idx = offending
        p, _, _ = eigen_signature(cm, idx)
        eig_ok &= p < len(idx)
    if not eig_ok:
        raise ArithmeticError(f"minor and eigen-interval procedures disagree on {cm.name or cm.entries}")

    # nerve of the reflection fixed sets: a face per subset generating a finite group
    nerve = SimplicialComplex.from_facets(finite, vertices=list(range(n)))
    prof = reduced_homology(nerve)
    is_boundary = (
        cls in ("euclidean", "hyperbolic")
        and all(idx in nerve for idx in proper)
        and full not in nerve
    )
    if is_boundary:
        expected = tuple(1 if k == n - 2 else 0 for k in range(n - 1))
        if prof.betti != expected or any(prof.torsion):
            raise ArithmeticError("nerve homology is not that of a sphere")
    return SimplexReport(
        matrix=cm,
        classification=cls,
        proper_parabolics_finite=offending is None,
        offending=offending,
        determinant_sign=det_sign,
        eigen_signature=sig,
        procedures_agree=True,
        nerve_faces=len(nerve.face_set()),
        nerve_betti=prof.betti,
        nerve_is_simplex_boundary=is_boundary,
        minor_signs=signs,
    )
