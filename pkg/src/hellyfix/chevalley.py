"""Elementary matrices of type A over polynomial rings.

``x_elem(n, (i, j), t)`` is the identity plus ``t`` in entry (i, j). Every
matrix built from these keeps its inverse alongside (products invert in
reverse order), so commutators never need a general matrix inverse over
a ring.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import RingElement, RingError, RingSpec
from .roots import build_root_system, generator_collection, interval_roots, property3_witness

__all__ = [
    "TypeARoot",
    "UnipotentMatrix",
    "StructureConstant",
    "StructureConstantTable",
    "InconsistencyError",
    "x_elem",
    "identity_matrix",
    "commutator",
    "determinant",
    "verify_additivity",
    "verify_commutator_formula",
    "fukunaga_generator_family",
    "collection_roots",
    "p_power_witness",
    "digraph_acyclicity",
    "subset_nilpotency",
    "LCSReport",
]


class InconsistencyError(AssertionError):
    """Two routes that must agree did not."""


@dataclass(frozen=True, order=True)
class TypeARoot:
    """e_i - e_j, 1-based."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise ValueError(f"bad type-A root ({self.i},{self.j})")

    @classmethod
    def of(cls, r) -> "TypeARoot":
        return r if isinstance(r, TypeARoot) else cls(*r)

    def __neg__(self):
        return TypeARoot(self.j, self.i)

    def add(self, other: "TypeARoot") -> "TypeARoot | None":
        if self.j == other.i and self.i != other.j:
            return TypeARoot(self.i, other.j)
        if other.j == self.i and other.i != self.j:
            return TypeARoot(other.i, self.j)
        return None

    def to_root(self, n: int) -> tuple[int, ...]:
        lo, hi = min(self.i, self.j), max(self.i, self.j)
        if hi > n:
            raise ValueError(f"({self.i},{self.j}) is not a root of SL_{n}")
        sign = 1 if self.i < self.j else -1
        return tuple(sign if lo <= k + 1 < hi else 0 for k in range(n - 1))

    @classmethod
    def from_root(cls, coeffs: Sequence[int]) -> "TypeARoot":
        support = [k for k, c in enumerate(coeffs) if c]
        lo, hi = support[0] + 1, support[-1] + 2
        return cls(lo, hi) if coeffs[support[0]] > 0 else cls(hi, lo)

    def __str__(self):
        return f"({self.i},{self.j})"

    def to_json(self):
        return [self.i, self.j]


Rows = tuple[tuple[RingElement, ...], ...]


def _matmul(a: Rows, b: Rows, ring: RingSpec) -> Rows:
    n = len(a)
    zero = ring.zero
    out = []
    for i in range(n):
        row_a = a[i]
        acc = [zero] * n
        for k in range(n):
            aik = row_a[k]
            if not aik.terms:
                continue
            row_b = b[k]
            for j in range(n):
                bkj = row_b[j]
                if bkj.terms:
                    acc[j] = acc[j] + aik * bkj
        out.append(tuple(acc))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class UnipotentMatrix:
    rows: Rows
    ring: RingSpec
    inverse_rows: Rows | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, UnipotentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        if other.ring != self.ring:
            raise RingError("matrices over different rings")
        inv = None
        if self.inverse_rows is not None and other.inverse_rows is not None:
            inv = _matmul(other.inverse_rows, self.inverse_rows, self.ring)
        return UnipotentMatrix(_matmul(self.rows, other.rows, self.ring), self.ring, inv)

    __matmul__ = __mul__

    def inverse(self) -> "UnipotentMatrix":
        if self.inverse_rows is None:
            raise ValueError("inverse unavailable: matrix is not a tracked generator word")
        return UnipotentMatrix(self.inverse_rows, self.ring, self.rows)

    def entry(self, i: int, j: int) -> RingElement:
        return self.rows[i - 1][j - 1]

    def is_identity(self) -> bool:
        one = self.ring.one
        return all(
            (x == one) if i == j else not x.terms
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
        )

    def differing_entries(self, other: "UnipotentMatrix") -> list[tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(self.n)
            if self.rows[i][j] != other.rows[i][j]
        ]

    def to_json(self) -> list[list[str]]:
        return [[x.serialize() for x in row] for row in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(map(str, row)) for row in self.rows) + "]"


def identity_matrix(n: int, ring: RingSpec) -> UnipotentMatrix:
    rows = tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))
    return UnipotentMatrix(rows, ring, rows)


def x_elem(n: int, alpha, t: RingElement | int, ring: RingSpec | None = None) -> UnipotentMatrix:
    """Identity plus t in entry alpha = (i, j); its inverse is x_elem(n, alpha, -t)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    a = TypeARoot.of(alpha)
    if a.i > n or a.j > n:
        raise ValueError(f"{a} is not a root of SL_{n}")
    if ring is None:
        if not isinstance(t, RingElement):
            raise TypeError("pass a RingElement or a ring")
        ring = t.ring
    t = ring(t)

    def build(val):
        return tuple(
            tuple(
                ring.one if r == c else (val if (r + 1, c + 1) == (a.i, a.j) else ring.zero)
                for c in range(n)
            )
            for r in range(n)
        )

    return UnipotentMatrix(build(t), ring, build(-t))


def commutator(a: UnipotentMatrix, b: UnipotentMatrix) -> UnipotentMatrix:
    """a b a^-1 b^-1; inverse is [b, a]."""
    return a * b * a.inverse() * b.inverse()


def determinant(m: UnipotentMatrix) -> RingElement:
    """Laplace expansion along the first row, skipping zero entries."""
    ring = m.ring

    def rec(rows: list[tuple], cols: tuple[int, ...]) -> RingElement:
        if not rows:
            return ring.one
        head, rest = rows[0], rows[1:]
        total = ring.zero
        for pos, c in enumerate(cols):
            x = head[c]
            if not x.terms:
                continue
            minor = rec(rest, cols[:pos] + cols[pos + 1:])
            term = x * minor
            total = total - term if pos % 2 else total + term
        return total

    return rec(list(m.rows), tuple(range(m.n)))


# ---------------------------------------------------------------- identities


@dataclass(frozen=True)
class AdditivityReport:
    ok: bool
    lhs: UnipotentMatrix
    rhs: UnipotentMatrix
    discrepancy: list[tuple[int, int]]


def verify_additivity(n: int, alpha, s: RingElement, t: RingElement) -> AdditivityReport:
    lhs = x_elem(n, alpha, s) * x_elem(n, alpha, t)
    rhs = x_elem(n, alpha, s + t)
    diff = lhs.differing_entries(rhs)
    return AdditivityReport(not diff, lhs, rhs, diff)


@dataclass(frozen=True)
class StructureConstant:
    alpha: TypeARoot
    beta: TypeARoot
    value: int

    def __post_init__(self):
        if self.value not in (1, -1):
            raise ValueError("type-A structure constants are +1 or -1")


class StructureConstantTable:
    """Signs observed per ordered root pair; a second, different sign is an error."""

    def __init__(self):
        self._table: dict[tuple[TypeARoot, TypeARoot], int] = {}

    def record(self, alpha: TypeARoot, beta: TypeARoot, value: int) -> StructureConstant:
        key = (alpha, beta)
        prev = self._table.get(key)
        if prev is not None and prev != value:
            raise InconsistencyError(f"structure constant for {alpha},{beta} changed from {prev} to {value}")
        anti = self._table.get((beta, alpha))
        if anti is not None and anti != -value:
            raise InconsistencyError(f"antisymmetry fails for {alpha},{beta}")
        self._table[key] = value
        return StructureConstant(alpha, beta, value)

    def get(self, alpha, beta) -> int | None:
        return self._table.get((TypeARoot.of(alpha), TypeARoot.of(beta)))

    def items(self):
        return sorted(self._table.items())

    def __len__(self):
        return len(self._table)

    def to_json(self):
        return [{"alpha": a.to_json(), "beta": b.to_json(), "N": v} for (a, b), v in self.items()]


DEFAULT_TABLE = StructureConstantTable()


@dataclass(frozen=True)
class FormulaReport:
    alpha: TypeARoot
    beta: TypeARoot
    target: TypeARoot | None
    constant: int | None
    ok: bool
    commutator: UnipotentMatrix = field(repr=False)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "target": self.target.to_json() if self.target else None,
            "N": self.constant,
            "ok": self.ok,
        }


def _interval_target(n: int, a: TypeARoot, b: TypeARoot) -> TypeARoot | None:
    rs = build_root_system("A", n - 1)
    found = interval_roots(rs, a.to_root(n), b.to_root(n))
    if len(found) > 1:
        raise InconsistencyError(f"type A interval for {a},{b} has {len(found)} roots")
    return TypeARoot.from_root(found[0].coeffs) if found else None


def verify_commutator_formula(
    n: int, alpha, beta, s: RingElement, t: RingElement,
    table: StructureConstantTable | None = None,
) -> FormulaReport:
    """Check [x_a(s), x_b(t)] against x_{a+b}(N s t) or the identity."""
    a, b = TypeARoot.of(alpha), TypeARoot.of(beta)
    if a == b or a == -b:
        raise ValueError(f"{a} and {b} are proportional; the formula needs independent roots")
    table = DEFAULT_TABLE if table is None else table
    comm = commutator(x_elem(n, a, s), x_elem(n, b, t))
    target = a.add(b)
    if target != _interval_target(n, a, b):
        raise InconsistencyError(f"root sum and interval scan disagree for {a},{b}")
    if target is None:
        return FormulaReport(a, b, None, None, comm.is_identity(), comm)
    st = s * t
    if not st.terms:
        return FormulaReport(a, b, target, table.get(a, b), comm.is_identity(), comm)
    entry = comm.entry(target.i, target.j)
    if entry == st:
        sign = 1
    elif entry == -st:
        sign = -1
    else:
        return FormulaReport(a, b, target, None, False, comm)
    ok = comm == x_elem(n, target, st if sign == 1 else -st)
    if ok:
        table.record(a, b, sign)
    return FormulaReport(a, b, target, sign, ok, comm)


# ------------------------------------------------------------ generating sets


def collection_roots(n: int, variant: str = "lowest") -> list[TypeARoot]:
    if n < 3:
        raise ValueError("generator collection needs rank >= 2 (n >= 3)")
    rs = build_root_system("A", n - 1)
    return [TypeARoot.from_root(r.coeffs) for r in generator_collection(rs, variant)]


def fukunaga_generator_family(
    n: int, ring_gens: Sequence[RingElement], variant: str = "lowest", ring: RingSpec | None = None,
) -> dict[TypeARoot, list[UnipotentMatrix]]:
    """x_a(1), x_a(r_1), ..., x_a(r_k) for each root a of the collection."""
    if ring is None:
        ring = ring_gens[0].ring if ring_gens else RingSpec()
    fam = {}
    for a in collection_roots(n, variant):
        gens = [x_elem(n, a, ring.one)] + [x_elem(n, a, ring(r)) for r in ring_gens]
        for g in gens:
            if not determinant(g).is_one():
                raise ArithmeticError(f"generator for {a} has determinant != 1")
        fam[a] = gens
    return fam


@dataclass(frozen=True)
class DigraphCertificate:
    n: int
    roots: tuple[TypeARoot, ...]
    order: tuple[int, ...] | None
    cycle: tuple[int, ...] | None

    @property
    def acyclic(self) -> bool:
        return self.order is not None

    def to_json(self) -> dict:
        return {"roots": [r.to_json() for r in self.roots],
                "order": list(self.order) if self.order else None,
                "cycle": list(self.cycle) if self.cycle else None}


def digraph_acyclicity(n: int, roots: Iterable) -> DigraphCertificate:
    """Topological order of 1..n under edges i -> j, or a directed cycle.

    Kahn's algorithm always takes the smallest available vertex, so the
    order is deterministic.
    """
    rs = tuple(sorted({TypeARoot.of(r) for r in roots}))
    succ = {v: set() for v in range(1, n + 1)}
    indeg = {v: 0 for v in succ}
    for r in rs:
        if r.i > n or r.j > n:
            raise ValueError(f"{r} out of range for n={n}")
        if r.j not in succ[r.i]:
            succ[r.i].add(r.j)
            indeg[r.j] += 1
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    deg = dict(indeg)
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in sorted(succ[v]):
            deg[w] -= 1
            if deg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == n:
        pos = {v: k for k, v in enumerate(order)}
        # conjugating by the permutation sends e_ij to e_{pos i, pos j}
        for r in rs:
            p = [[int(pos[a + 1] == b) for b in range(n)] for a in range(n)]
            e = [[int((a + 1, b + 1) == (r.i, r.j)) for b in range(n)] for a in range(n)]
            conj = [[sum(p[k][a] * e[k][l] * p[l][b] for k in range(n) for l in range(n))
                     for b in range(n)] for a in range(n)]
            if any(conj[a][b] for a in range(n) for b in range(a + 1)):
                raise ArithmeticError(f"conjugated {r} is not strictly upper triangular")
        return DigraphCertificate(n, rs, tuple(order), None)
    # every remaining vertex has a predecessor among the remaining ones; walk back
    left = {v for v in succ if v not in set(order)}
    pred = {v: min(u for u in left if v in succ[u]) for v in left}
    v = min(left)
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = pred[v]
    cycle = walk[seen[v]:][::-1]
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    return DigraphCertificate(n, rs, None, tuple(cycle + [cycle[0]]))


@dataclass(frozen=True)
class PowerWitness:
    alpha: TypeARoot
    sigma: TypeARoot
    delta: TypeARoot
    delta_coeff: int
    p: int
    ok: bool
    digraph: DigraphCertificate

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "sigma": self.sigma.to_json(),
                "delta": self.delta.to_json(), "delta_coeff": self.delta_coeff,
                "p": self.p, "ok": self.ok, "digraph": self.digraph.to_json()}


def p_power_witness(n: int, alpha, t: RingElement) -> PowerWitness:
    """x_a(t) = [x_sigma(t), x_delta(e)] with e = +-1, so p = 1 in type A."""
    if n < 3:
        raise ValueError("generator collection needs rank >= 2 (n >= 3)")
    a = TypeARoot.of(alpha)
    rs = build_root_system("A", n - 1)
    w = property3_witness(rs, a.to_root(n))
    sigma, delta = TypeARoot.from_root(w.sigma.coeffs), TypeARoot.from_root(w.delta.coeffs)
    ring = t.ring
    lhs = x_elem(n, a, t)
    ok, coeff = False, 0
    for e in (1, -1):
        if commutator(x_elem(n, sigma, t), x_elem(n, delta, ring.const(e))) == lhs:
            ok, coeff = True, e
            break
    dg = digraph_acyclicity(n, [sigma, delta])
    return PowerWitness(a, sigma, delta, coeff, 1, ok and dg.acyclic, dg)


# --------------------------------------------------------- nilpotency closure


@dataclass(frozen=True)
class LCSReport:
    n: int
    ring: str
    subset: tuple[TypeARoot, ...]
    class_bound: int
    nilpotency_class: int | None
    status: str  # nilpotent | non-nilpotent | non-terminating
    generator_route: tuple[int, ...]
    generator_route_truncated: bool
    element_route: tuple[int, ...] | None
    digraph: DigraphCertificate

    def to_json(self) -> dict:
        return {
            "n": self.n, "ring": self.ring, "subset": [r.to_json() for r in self.subset],
            "class_bound": self.class_bound, "class": self.nilpotency_class, "status": self.status,
            "commutator_counts": list(self.generator_route),
            "commutators_truncated": self.generator_route_truncated,
            "series_orders": list(self.element_route) if self.element_route else None,
            "digraph": self.digraph.to_json(),
        }


class _Encoded:
    """Matrices over a small finite ring as flat int tuples with lookup tables."""

    def __init__(self, ring: RingSpec, n: int):
        from .poly import enumerate_ring

        self.ring, self.n = ring, n
        elems = list(enumerate_ring(ring))
        size = len(elems)
        self.add = [[(a + b).index() for b in elems] for a in elems]
        self.mul = [[(a * b).index() for b in elems] for a in elems]
        self.identity = tuple(int(i == j) * ring.one.index() for i in range(n) for j in range(n))
        self.size = size

    def encode(self, m: UnipotentMatrix) -> tuple[int, ...]:
        return tuple(x.index() for row in m.rows for x in row)

    def mult(self, a, b):
        n, add, mul = self.n, self.add, self.mul
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    x = a[i * n + k]
                    if x:
                        y = b[k * n + j]
                        if y:
                            acc = add[acc][mul[x][y]]
                out.append(acc)
        return tuple(out)

    def inverse(self, a):
        prev, cur = self.identity, a
        while cur != self.identity:
            prev, cur = cur, self.mult(cur, a)
        return prev

    def closure(self, gens, conj, limit):
        """Normal closure of <gens> under conjugation by ``conj`` (pairs s, s^-1)."""
        gens = list(dict.fromkeys(g for g in gens if g != self.identity))
        while True:
            elems = {self.identity}
            frontier = [self.identity]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = self.mult(x, g)
                    if y not in elems:
                        elems.add(y)
                        if len(elems) > limit:
                            return None, gens
                        frontier.append(y)
            extra = []
            for g in gens:
                for s, s_inv in conj:
                    c = self.mult(self.mult(s, g), s_inv)
                    if c not in elems and c not in extra:
                        extra.append(c)
            if not extra:
                return elems, gens
            gens += extra

    def commutator(self, a, b):
        return self.mult(self.mult(self.mult(a, b), self.inverse(a)), self.inverse(b))


def _element_route(ring, n, gens, bound, limit) -> tuple[list[int], int | None, bool] | None:
    if ring.size() > 256:
        return None
    enc = _Encoded(ring, n)
    s_enc = [enc.encode(g) for g in gens]
    conj = [(enc.encode(g), enc.encode(g.inverse())) for g in gens]
    group, hgens = enc.closure(s_enc, conj, limit)
    if group is None:
        return None
    orders = [len(group)]
    if len(group) == 1:
        return orders, 0, False
    for k in range(1, bound + 1):
        t = [enc.commutator(h, s) for h in hgens for s in s_enc]
        sub, hgens = enc.closure(t, conj, limit)
        if sub is None:
            return None
        orders.append(len(sub))
        if len(sub) == 1:
            return orders, k, False
        if len(sub) == orders[-2]:
            return orders, None, True
    return orders, None, False


def subset_nilpotency(
    n: int,
    subset: Iterable,
    ring: RingSpec,
    class_bound: int | None = None,
    element_limit: int = 50_000,
    term_cap: int = 20_000,
) -> LCSReport:
    """Lower central series of the group generated by the subset's generators.

    Generator route: gamma_k is normally generated by the left-normed
    commutators of weight k in the generators, so the class is the least
    c with every weight-(c+1) commutator trivial. Element route (small
    groups only): the subgroups themselves, computed as normal closures,
    which also detects a series that stabilizes above the identity.
    """
    if not ring.is_finite:
        raise RingError(f"nilpotency closure needs a finite ring, got {ring}")
    roots = tuple(sorted({TypeARoot.of(r) for r in subset}))
    bound = n * (n - 1) // 2 if class_bound is None else class_bound
    gens = []
    for a in roots:
        gens.append(x_elem(n, a, ring.one))
        gens.extend(x_elem(n, a, v) for v in ring.gens())
    gens = list(dict.fromkeys(g for g in gens if not g.is_identity()))
    dg = digraph_acyclicity(n, roots)

    counts = []
    truncated = False
    level = gens
    gen_class = 0 if not level else None
    for k in range(1, bound + 1):
        if not level:
            break
        nxt: dict[UnipotentMatrix, None] = {}
        for t in level:
            for s in gens:
                c = commutator(t, s)
                if not c.is_identity():
                    nxt.setdefault(c)
                    if len(nxt) >= term_cap:
                        truncated = True
                        break
            if truncated:
                break
        counts.append(len(nxt))
        if not nxt:
            gen_class = k
            break
        level = list(nxt)
        if truncated:
            break

    elem = _element_route(ring, n, gens, bound, element_limit)
    stabilized = False
    if elem is not None:
        orders, elem_class, stabilized = elem
        if gen_class is not None and elem_class is not None and gen_class != elem_class:
            raise InconsistencyError(f"class {gen_class} from commutators, {elem_class} from subgroups")
        if gen_class is None and elem_class is not None and not truncated:
            raise InconsistencyError("subgroup series terminated but commutators did not")
        if gen_class is None:
            gen_class = elem_class
        elem_orders = tuple(orders)
    else:
        elem_orders = None

    if gen_class is not None:
        status = "nilpotent"
    elif stabilized:
        status = "non-nilpotent"
    else:
        status = "non-terminating"
    if gen_class is None and dg.acyclic:
        raise InconsistencyError(
            f"acyclic subset {[str(r) for r in roots]} exceeded class bound {bound}"
        )
    return LCSReport(n, str(ring), roots, bound, gen_class, status, tuple(counts), truncated, elem_orders, dg)
