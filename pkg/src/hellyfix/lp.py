"""Exact linear feasibility by phase-one simplex with integer pivoting.

Only feasibility is needed anywhere in the package, so this solves

    A_ub x <= b_ub,  A_eq x == b_eq,  (x >= 0 if ``nonneg``)

and returns a point or ``None``. The tableau is kept integral with the
fraction-free (Bareiss) update: every entry is the true rational entry
times the current pivot determinant, and each update divides exactly.
Bland's rule keeps it finite. Returned points are re-checked exactly.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

__all__ = ["feasible_point", "check_point"]


def _int_scale(row: list[Fraction], rhs: Fraction) -> tuple[list[int], int]:
    den = math.lcm(rhs.denominator, *(x.denominator for x in row))
    return [int(x * den) for x in row], int(rhs * den)


def feasible_point(
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nvars: int | None = None,
    nonneg: bool = False,
) -> list[Fraction] | None:
    """Return an exact feasible point of the system, or None if empty.

    Free variables are split as ``x = p - q``. Inequality rows with a
    nonnegative right-hand side start with their slack basic; the others
    and all equality rows get an artificial variable, and phase one
    drives the artificials to zero.
    """
    if nvars is None:
        rows = list(a_ub) + list(a_eq)
        if not rows:
            raise ValueError("cannot infer the number of variables from an empty system")
        nvars = len(rows[0])
    if len(a_ub) != len(b_ub) or len(a_eq) != len(b_eq):
        raise ValueError("row count mismatch between matrix and right-hand side")
    if not a_ub and not a_eq:
        return [Fraction(0)] * nvars

    nx = nvars if nonneg else 2 * nvars
    m_ub, m_eq = len(a_ub), len(a_eq)
    m = m_ub + m_eq

    scaled = []
    for i in range(m):
        src, b = (a_ub[i], b_ub[i]) if i < m_ub else (a_eq[i - m_ub], b_eq[i - m_ub])
        if len(src) != nvars:
            raise ValueError(f"row {i} has {len(src)} entries, expected {nvars}")
        coeffs, rhs = _int_scale([Fraction(v) for v in src], Fraction(b))
        scaled.append((coeffs, rhs))

    needs_art = [i for i in range(m) if i >= m_ub or scaled[i][1] < 0]
    art_col = {i: nx + m_ub + k for k, i in enumerate(needs_art)}
    ncols = nx + m_ub + len(needs_art)

    tab: list[list[int]] = []  # last entry of each row is the rhs
    basis: list[int] = []
    for i, (coeffs, rhs) in enumerate(scaled):
        row = [0] * (ncols + 1)
        for j, v in enumerate(coeffs):
            row[j] = v
            if not nonneg:
                row[nvars + j] = -v
        if i < m_ub:
            row[nx + i] = 1
        row[ncols] = rhs
        if i in art_col:
            if rhs < 0:
                row = [-x for x in row]
            row[art_col[i]] = 1
            basis.append(art_col[i])
        else:
            basis.append(nx + i)
        tab.append(row)

    # phase-one objective: minimize the sum of artificials, as reduced costs
    cost = [0] * (ncols + 1)
    for i in needs_art:
        for j in range(ncols + 1):
            cost[j] -= tab[i][j]
    for i in needs_art:
        cost[art_col[i]] = 0
    det = 1

    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                if leave is None:
                    leave = i
                    continue
                # compare rhs_i / a with rhs_leave / a_leave
                lhs = tab[i][ncols] * tab[leave][enter]
                rhs = tab[leave][ncols] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-one simplex reported an unbounded ray")
        prow = tab[leave]
        piv = prow[enter]
        for i in range(m):
            if i == leave:
                continue
            row = tab[i]
            f = row[enter]
            if f:
                tab[i] = [(x * piv - f * y) // det for x, y in zip(row, prow)]
            elif piv != det:
                tab[i] = [(x * piv) // det for x in row]
        f = cost[enter]
        cost = [(x * piv - f * y) // det for x, y in zip(cost, prow)]
        det = piv
        basis[leave] = enter

    if cost[ncols] != 0:
        return None
    values = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        values[j] = Fraction(tab[i][ncols], det)
    if nonneg:
        x = values[:nvars]
    else:
        x = [values[j] - values[nvars + j] for j in range(nvars)]
    if not check_point(x, a_ub, b_ub, a_eq, b_eq, nonneg):
        raise ArithmeticError("simplex returned a point that fails the system")
    return x


def check_point(x, a_ub=(), b_ub=(), a_eq=(), b_eq=(), nonneg=False) -> bool:
    """Exact membership test, used to re-verify every returned point."""
    for row, b in zip(a_ub, b_ub):
        if sum((Fraction(a) * v for a, v in zip(row, x)), Fraction(0)) > Fraction(b):
            return False
    for row, b in zip(a_eq, b_eq):
        if sum((Fraction(a) * v for a, v in zip(row, x)), Fraction(0)) != Fraction(b):
            return False
    if nonneg and any(v < 0 for v in x):
        return False
    return True
