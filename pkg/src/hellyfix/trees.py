"""Isometries of metric trees with exact rational edge lengths.

Finite trees are explicit. Infinite periodic trees are given by an
oracle (a neighbour callback) and are only ever explored inside a ball;
anything that cannot be certified inside the ball is reported as
``inconclusive`` rather than guessed.

Points are vertices or interior points of edges, so the midpoint of an
inverted edge is an honest fixed point.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from . import _linalg as la
from .nerve import ConvexFamily

__all__ = [
    "TreeError",
    "MetricTree",
    "TreePoint",
    "TreeIsometry",
    "OracleTree",
    "OracleIsometry",
    "ActionSpec",
    "FixSet",
    "Classification",
    "classify",
    "fix_subtree",
    "minset",
    "circumcenter",
    "finite_group_fixed_point",
    "common_fixed_point",
    "normalizer_invariance_check",
    "integer_line",
    "line_translation",
    "line_reflection",
    "random_symmetric_tree",
    "load_action",
]


class TreeError(ValueError):
    pass


# ------------------------------------------------------------------- points


@dataclass(frozen=True)
class TreePoint:
    """A vertex, or the point at ``offset`` from ``edge[0]`` along ``edge``."""

    vertex: Hashable = None
    edge: tuple | None = None
    offset: Fraction | None = None

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise TreeError("a tree point is either a vertex or an edge point")

    @property
    def is_vertex(self) -> bool:
        return self.edge is None

    def to_json(self):
        if self.is_vertex:
            return {"vertex": self.vertex}
        return {"edge": list(self.edge), "offset": la.frac_str(self.offset)}

    def __str__(self):
        if self.is_vertex:
            return str(self.vertex)
        return f"{self.edge[0]}-{self.edge[1]}@{self.offset}"


class MetricTree:
    """Finite tree; edge lengths are positive rationals.

    Connectivity and acyclicity are checked on construction.
    """

    def __init__(self, edges: Iterable, vertices: Sequence | None = None):
        lengths: dict[frozenset, Fraction] = {}
        verts: list = list(vertices) if vertices is not None else []
        seen = set(verts)
        for e in edges:
            if len(e) == 2:
                u, v, ln = e[0], e[1], 1
            else:
                u, v, ln = e
            ln = la.parse_frac(ln)
            if ln <= 0:
                raise TreeError(f"edge {u}-{v} has nonpositive length {ln}")
            if u == v:
                raise TreeError(f"loop at {u}")
            key = frozenset((u, v))
            if key in lengths:
                raise TreeError(f"repeated edge {u}-{v}")
            lengths[key] = ln
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    verts.append(x)
        if not verts:
            raise TreeError("a tree needs at least one vertex")
        if len(lengths) != len(verts) - 1:
            raise TreeError(f"{len(verts)} vertices but {len(lengths)} edges: not a tree")
        self.vertices = tuple(verts)
        self.lengths = lengths
        self.adj: dict = {v: [] for v in verts}
        for key in lengths:
            u, v = tuple(key)
            self.adj[u].append(v)
            self.adj[v].append(u)
        self._order = {v: i for i, v in enumerate(verts)}
        for v in verts:
            self.adj[v].sort(key=self._order.__getitem__)
        self._depth, self._parent = self._sssp(verts[0])
        if len(self._depth) != len(verts):
            raise TreeError("tree is disconnected")
        self._level = {verts[0]: 0}
        for v in self._bfs_order():
            if self._parent[v] is not None:
                self._level[v] = self._level[self._parent[v]] + 1

    # construction helpers
    @classmethod
    def from_json(cls, data) -> "MetricTree":
        if isinstance(data, dict):
            return cls(data.get("edges", []), data.get("vertices"))
        return cls(data)

    def to_json(self) -> dict:
        edges = []
        for key, ln in self.lengths.items():
            u, v = sorted(key, key=self._order.__getitem__)
            edges.append([u, v, la.frac_str(ln)])
        edges.sort(key=lambda e: (self._order[e[0]], self._order[e[1]]))
        return {"vertices": list(self.vertices), "edges": edges}

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple]:
        out = [tuple(sorted(k, key=self._order.__getitem__)) for k in self.lengths]
        return sorted(out, key=lambda e: (self._order[e[0]], self._order[e[1]]))

    def length(self, u, v) -> Fraction:
        return self.lengths[frozenset((u, v))]

    def _sssp(self, src):
        dist = {src: Fraction(0)}
        parent = {src: None}
        todo = [src]
        while todo:
            x = todo.pop()
            for y in self.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + self.length(x, y)
                    parent[y] = x
                    todo.append(y)
        return dist, parent

    def _bfs_order(self) -> list:
        order = [self.vertices[0]]
        for x in order:
            order.extend(y for y in self.adj[x] if y != self._parent[x])
        return order

    def _lca(self, u, v):
        lv, par = self._level, self._parent
        while lv[u] > lv[v]:
            u = par[u]
        while lv[v] > lv[u]:
            v = par[v]
        while u != v:
            u, v = par[u], par[v]
        return u

    def dist(self, u, v) -> Fraction:
        return self._depth[u] + self._depth[v] - 2 * self._depth[self._lca(u, v)]

    def path(self, u, v) -> list:
        a = self._lca(u, v)
        up, down = [u], [v]
        while up[-1] != a:
            up.append(self._parent[up[-1]])
        while down[-1] != a:
            down.append(self._parent[down[-1]])
        return up + down[-2::-1]

    # points
    def vertex_point(self, v) -> TreePoint:
        if v not in self._order:
            raise TreeError(f"unknown vertex {v!r}")
        return TreePoint(vertex=v)

    def point(self, a, b, offset) -> TreePoint:
        """Point at distance ``offset`` from a along the edge a-b."""
        offset = Fraction(offset)
        ln = self.length(a, b)
        if offset < 0 or offset > ln:
            raise TreeError(f"offset {offset} outside edge {a}-{b} of length {ln}")
        if offset == 0:
            return TreePoint(vertex=a)
        if offset == ln:
            return TreePoint(vertex=b)
        if self._order[a] > self._order[b]:
            a, b, offset = b, a, ln - offset
        return TreePoint(edge=(a, b), offset=offset)

    def midpoint(self, a, b) -> TreePoint:
        return self.point(a, b, self.length(a, b) / 2)

    def _ends(self, p: TreePoint) -> list[tuple]:
        """(vertex, distance from p) for the vertices bounding p's carrier."""
        if p.is_vertex:
            return [(p.vertex, Fraction(0))]
        a, b = p.edge
        return [(a, p.offset), (b, self.length(a, b) - p.offset)]

    def point_dist(self, p: TreePoint, q: TreePoint) -> Fraction:
        if not p.is_vertex and not q.is_vertex and p.edge == q.edge:
            return abs(p.offset - q.offset)
        return min(dp + self.dist(x, y) + dq for x, dp in self._ends(p) for y, dq in self._ends(q))

    def _coord(self, w, edge) -> Fraction:
        """Coordinate of a waypoint along ``edge`` measured from edge[0]."""
        a, b = edge
        if isinstance(w, TreePoint):
            if w.is_vertex:
                w = w.vertex
            else:
                return w.offset if w.edge == (a, b) else self.length(a, b) - w.offset
        return Fraction(0) if w == a else self.length(a, b)

    def geodesic_point(self, p: TreePoint, q: TreePoint, r) -> TreePoint:
        """Point on the geodesic from p to q at distance r from p."""
        r = Fraction(r)
        total = self.point_dist(p, q)
        if r < 0 or r > total:
            raise TreeError("distance outside the geodesic")
        if r == 0:
            return p
        if r == total:
            return q
        direct = (not p.is_vertex or not q.is_vertex) and self._same_carrier(p, q)
        if direct:
            edge = p.edge if not p.is_vertex else q.edge
            c0, c1 = self._coord(p, edge), self._coord(q, edge)
            step = r if c1 > c0 else -r
            return self.point(edge[0], edge[1], c0 + step)
        x, y = min(
            ((x, y) for x, _ in self._ends(p) for y, _ in self._ends(q)),
            key=lambda xy: dict(self._ends(p))[xy[0]] + self.dist(*xy) + dict(self._ends(q))[xy[1]],
        )
        way: list = [p] + self.path(x, y) + [q]
        # drop duplicated vertex waypoints at the ends
        if p.is_vertex:
            way = way[1:]
            way[0] = p.vertex
        if q.is_vertex:
            way = way[:-1]
        pos = Fraction(0)
        for w1, w2 in zip(way, way[1:]):
            edge = self._edge_of(w1, w2)
            seg = abs(self._coord(w2, edge) - self._coord(w1, edge))
            if pos + seg >= r:
                c1 = self._coord(w1, edge)
                c2 = self._coord(w2, edge)
                t = r - pos
                return self.point(edge[0], edge[1], c1 + (t if c2 > c1 else -t))
            pos += seg
        raise ArithmeticError("geodesic walk overran")

    def _same_carrier(self, p, q) -> bool:
        if not p.is_vertex and not q.is_vertex:
            return p.edge == q.edge
        e = p if not p.is_vertex else q
        v = q if not p.is_vertex else p
        return v.vertex in e.edge

    def _edge_of(self, w1, w2) -> tuple:
        def ends(w):
            if isinstance(w, TreePoint):
                return set(w.edge) if not w.is_vertex else {w.vertex}
            return {w}

        e1, e2 = ends(w1), ends(w2)
        if isinstance(w1, TreePoint) and not w1.is_vertex:
            return w1.edge
        if isinstance(w2, TreePoint) and not w2.is_vertex:
            return w2.edge
        a, b = next(iter(e1)), next(iter(e2))
        return tuple(sorted((a, b), key=self._order.__getitem__))

    def subdivide(self) -> tuple["MetricTree", dict]:
        """Barycentric subdivision; returns the new tree and edge -> midpoint label."""
        mids = {}
        edges = []
        for a, b in self.edges():
            m = ("mid", a, b)
            half = self.length(a, b) / 2
            mids[(a, b)] = m
            edges.append((a, m, half))
            edges.append((m, b, half))
        return MetricTree(edges, vertices=list(self.vertices) + list(mids.values())), mids

    def center(self) -> TreePoint:
        return circumcenter(self, [self.vertex_point(v) for v in self.vertices])


# ---------------------------------------------------------------- isometries


class TreeIsometry:
    """Vertex bijection of a finite tree preserving adjacency and lengths."""

    def __init__(self, tree: MetricTree, mapping: dict, name: str = "", check: bool = True):
        self.tree = tree
        self.name = name
        self.mapping = {v: mapping.get(v, v) for v in tree.vertices}
        if check:
            self._validate()

    def _validate(self):
        t = self.tree
        img = self.mapping
        if set(img.values()) != set(t.vertices) or len(set(img.values())) != len(t.vertices):
            raise TreeError(f"{self.name or 'map'} is not a bijection of the vertices")
        for key, ln in t.lengths.items():
            u, v = tuple(key)
            k2 = frozenset((img[u], img[v]))
            if t.lengths.get(k2) != ln:
                raise TreeError(f"{self.name or 'map'} does not preserve the edge {u}-{v}")
        if len(t) <= 100:
            for u in t.vertices:
                for v in t.vertices:
                    if t.dist(u, v) != t.dist(img[u], img[v]):
                        raise TreeError(f"{self.name or 'map'} is not an isometry at {u},{v}")

    @classmethod
    def identity(cls, tree: MetricTree) -> "TreeIsometry":
        return cls(tree, {}, "id", check=False)

    def __call__(self, v):
        return self.mapping[v]

    def apply(self, p: TreePoint) -> TreePoint:
        if p.is_vertex:
            return TreePoint(vertex=self.mapping[p.vertex])
        a, b = p.edge
        return self.tree.point(self.mapping[a], self.mapping[b], p.offset)

    def compose(self, other: "TreeIsometry") -> "TreeIsometry":
        """self after other."""
        return TreeIsometry(self.tree, {v: self.mapping[other.mapping[v]] for v in self.tree.vertices},
                            f"{self.name}{other.name}", check=False)

    def inverse(self) -> "TreeIsometry":
        return TreeIsometry(self.tree, {w: v for v, w in self.mapping.items()}, f"{self.name}^-1", check=False)

    def key(self) -> tuple:
        return tuple(self.mapping[v] for v in self.tree.vertices)

    def __eq__(self, other):
        return isinstance(other, TreeIsometry) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.mapping.items())

    def to_json(self) -> dict:
        return {str(v): w for v, w in self.mapping.items() if v != w}


class OracleTree:
    """Locally finite tree given by ``neighbors(v) -> [(w, length), ...]``."""

    def __init__(self, neighbors: Callable, base, radius, name: str = ""):
        self.neighbors = neighbors
        self.base = base
        self.radius = Fraction(radius)
        self.name = name

    def ball(self, center=None, radius=None) -> tuple[MetricTree, dict]:
        """The ball as a finite tree, plus depth of each vertex."""
        center = self.base if center is None else center
        radius = self.radius if radius is None else Fraction(radius)
        depth = {center: Fraction(0)}
        edges = []
        q = deque([center])
        while q:
            x = q.popleft()
            for y, ln in self.neighbors(x):
                ln = Fraction(ln)
                if y in depth:
                    continue
                if depth[x] + ln <= radius:
                    depth[y] = depth[x] + ln
                    edges.append((x, y, ln))
                    q.append(y)
        return MetricTree(edges, vertices=[center]), depth


class OracleIsometry:
    def __init__(self, func: Callable, inverse: Callable, name: str = ""):
        self.func = func
        self.inv = inverse
        self.name = name

    def __call__(self, v):
        return self.func(v)

    def compose(self, other: "OracleIsometry") -> "OracleIsometry":
        f, g, fi, gi = self.func, other.func, self.inv, other.inv
        return OracleIsometry(lambda v: f(g(v)), lambda v: gi(fi(v)), f"{self.name}{other.name}")

    def inverse(self) -> "OracleIsometry":
        return OracleIsometry(self.inv, self.func, f"{self.name}^-1")


def integer_line(radius=12) -> OracleTree:
    return OracleTree(lambda v: [(v - 1, 1), (v + 1, 1)], 0, radius, "integer-line")


def line_translation(k: int) -> OracleIsometry:
    return OracleIsometry(lambda v: v + k, lambda v: v - k, f"t{k}")


def line_reflection(c) -> OracleIsometry:
    """v -> 2c - v; c may be a half-integer (then an edge is inverted)."""
    c2 = Fraction(c) * 2
    if c2.denominator != 1:
        raise TreeError("reflection centre must be an integer or half-integer")
    c2 = int(c2)
    return OracleIsometry(lambda v: c2 - v, lambda v: c2 - v, f"r{c}")


# ------------------------------------------------------------ fixed sets


@dataclass(frozen=True)
class FixSet:
    """Fixed vertices plus midpoints of inverted edges; ``complete`` is False
    when the set may continue outside an explored ball."""

    vertices: frozenset
    midpoints: frozenset
    complete: bool = True

    def is_empty(self) -> bool:
        return not self.vertices and not self.midpoints

    def points(self, tree: MetricTree) -> list[TreePoint]:
        pts = [tree.vertex_point(v) for v in sorted(self.vertices, key=tree._order.__getitem__)]
        pts += [tree.midpoint(a, b) for a, b in sorted(self.midpoints, key=lambda e: (tree._order[e[0]], tree._order[e[1]]))]
        return pts

    def subdivision_vertices(self, tree: MetricTree, mids: dict) -> frozenset:
        """The fixed set as a vertex set of the barycentric subdivision."""
        out = set(self.vertices)
        for (a, b), m in mids.items():
            if (a in self.vertices and b in self.vertices) or (a, b) in self.midpoints:
                out.add(m)
        return frozenset(out)

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices, key=repr),
                "inverted_edges": sorted([list(e) for e in self.midpoints], key=repr),
                "complete": self.complete}


def _fix_in(tree: MetricTree, g) -> FixSet:
    fixed = frozenset(v for v in tree.vertices if g(v) == v)
    inverted = frozenset(
        (a, b) for a, b in tree.edges() if g(a) == b and g(b) == a
    )
    return FixSet(fixed, inverted)


def fix_subtree(tree, g, base=None, radius=None) -> FixSet:
    c = classify(tree, g, base, radius)
    if c.kind == "hyperbolic":
        raise TreeError(f"{getattr(g, 'name', 'g')} is hyperbolic: no fixed points")
    if c.kind == "inconclusive":
        raise TreeError(f"classification inconclusive: {c.reason}")
    return c.fix


@dataclass(frozen=True)
class Classification:
    kind: str  # elliptic | hyperbolic | inconclusive
    tau: Fraction | None
    fix: FixSet | None = None
    axis: tuple | None = None
    base_independent: bool = True
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "tau": la.frac_str(self.tau) if self.tau is not None else None,
            "fix": self.fix.to_json() if self.fix else None,
            "axis": list(self.axis) if self.axis else None,
            "base_independent": self.base_independent,
            "reason": self.reason,
        }


def _tau(dist, v, g) -> Fraction | None:
    gv = g(v)
    ggv = g(gv)
    d1, d2 = dist(v, gv), dist(v, ggv)
    if d1 is None or d2 is None:
        return None
    return max(Fraction(0), d2 - d1)


def _check_fix_connected(tree: MetricTree, fix: FixSet) -> None:
    if fix.vertices:
        verts = fix.vertices
        start = next(iter(verts))
        seen = {start}
        todo = [start]
        while todo:
            for w in tree.adj[todo.pop()]:
                if w in verts and w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(verts):
            raise ArithmeticError("fixed vertex set is not connected")
        if fix.midpoints:
            raise ArithmeticError("fixed vertices and an inverted edge together")
    elif len(fix.midpoints) > 1:
        raise ArithmeticError("two inverted edges and no fixed vertex")


def _axis_order(tree: MetricTree, verts) -> tuple:
    verts = list(verts)
    if len(verts) <= 1:
        return tuple(verts)
    a = max(verts, key=lambda v: (tree.dist(verts[0], v), repr(v)))
    b = max(verts, key=lambda v: (tree.dist(a, v), repr(v)))
    path = tree.path(a, b)
    if set(path) != set(verts):
        raise ArithmeticError("axis vertices do not form a path")
    return tuple(path)


def classify(tree, g, base=None, radius=None) -> Classification:
    """Elliptic or hyperbolic from tau = max(0, d(v, g^2 v) - d(v, g v)).

    On finite trees tau is computed at every vertex and must not depend on
    it. On oracle trees everything happens in the explored ball.
    """
    if isinstance(tree, OracleTree):
        return _classify_oracle(tree, g, base, radius)
    taus = {v: _tau(tree.dist, v, g) for v in tree.vertices}
    values = set(taus.values())
    if len(values) != 1:
        raise ArithmeticError(f"translation length depends on the base vertex: {sorted(values)}")
    tau = values.pop()
    if tau == 0:
        fix = _fix_in(tree, g)
        if fix.is_empty():
            raise ArithmeticError("tau = 0 but no fixed point")
        _check_fix_connected(tree, fix)
        return Classification("elliptic", tau, fix=fix)
    axis = [v for v in tree.vertices if tree.dist(v, g(v)) == tau]
    return Classification("hyperbolic", tau, axis=_axis_order(tree, axis))


def _classify_oracle(tree: OracleTree, g, base, radius) -> Classification:
    ball, depth = tree.ball(base, radius)
    inside = set(ball.vertices)

    def dist(u, v):
        return ball.dist(u, v) if u in inside and v in inside else None

    v0 = ball.vertices[0]
    tau = _tau(dist, v0, g)
    if tau is None:
        return Classification("inconclusive", None, reason="g v or g^2 v outside the explored ball")
    others = {t for v in ball.vertices if (t := _tau(dist, v, g)) is not None}
    if others != {tau}:
        raise ArithmeticError(f"translation length depends on the base vertex: {sorted(others)}")
    if tau == 0:
        fix = _fix_in(ball, g)
        if fix.is_empty():
            return Classification("inconclusive", tau, reason="elliptic, but no fixed point inside the ball")
        complete = True
        for v in fix.vertices:
            for w, _ in tree.neighbors(v):
                if w not in inside and g(w) == w:
                    complete = False
        fix = FixSet(fix.vertices, fix.midpoints, complete)
        _check_fix_connected(ball, fix)
        return Classification("elliptic", tau, fix=fix)
    axis = [v for v in ball.vertices if g(v) in inside and ball.dist(v, g(v)) == tau]
    if not axis:
        return Classification("inconclusive", tau, reason="hyperbolic, but no axis vertex inside the ball")
    return Classification("hyperbolic", tau, axis=_axis_order(ball, axis))


def minset(tree, g, base=None, radius=None):
    """Fix(g) for elliptic g, the axis for hyperbolic g."""
    c = classify(tree, g, base, radius)
    if c.kind == "inconclusive":
        raise TreeError(f"classification inconclusive: {c.reason}")
    return c.fix if c.kind == "elliptic" else c.axis


# ------------------------------------------------------------- circumcenter


def circumcenter(tree: MetricTree, points: Sequence[TreePoint]) -> TreePoint:
    """Unique minimizer of the maximal distance: midpoint of a diametral pair."""
    pts = list(points)
    if not pts:
        raise TreeError("circumcenter of an empty set")
    p = max(pts, key=lambda x: tree.point_dist(pts[0], x))
    q = max(pts, key=lambda x: tree.point_dist(p, x))
    diam = tree.point_dist(p, q)
    c = tree.geodesic_point(p, q, diam / 2)
    if max(tree.point_dist(c, x) for x in pts) != diam / 2:
        raise ArithmeticError("circumradius is not half the diameter")
    return c


# ------------------------------------------------------------------ actions


@dataclass
class ActionSpec:
    """Named generators plus optional relator words (lists of names; ``a^-1`` allowed)."""

    tree: MetricTree
    generators: dict
    relators: list = field(default_factory=list)

    def __post_init__(self):
        for word in self.relators:
            if not self.evaluate(word).is_identity():
                raise TreeError(f"relator {' '.join(word)} is not the identity")

    def evaluate(self, word: Sequence[str]) -> TreeIsometry:
        out = TreeIsometry.identity(self.tree)
        for tok in word:
            inv = tok.endswith("^-1")
            name = tok[:-3] if inv else tok
            if name not in self.generators:
                raise TreeError(f"unknown generator {name!r} in relator")
            g = self.generators[name]
            out = out.compose(g.inverse() if inv else g)
        return out

    @classmethod
    def from_json(cls, data) -> "ActionSpec":
        tree = MetricTree.from_json(data["tree"])
        cast = {str(v): v for v in tree.vertices}

        def vert(x):
            if x in tree._order:
                return x
            if str(x) in cast:
                return cast[str(x)]
            raise TreeError(f"unknown vertex {x!r}")

        gens = {
            name: TreeIsometry(tree, {vert(k): vert(v) for k, v in m.items()}, name)
            for name, m in data.get("generators", {}).items()
        }
        rels = [w.split() if isinstance(w, str) else list(w) for w in data.get("relators", [])]
        return cls(tree, gens, rels)

    @classmethod
    def load(cls, path) -> "ActionSpec":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def group_closure(tree: MetricTree, gens: Iterable[TreeIsometry], bound: int = 10_000) -> list[TreeIsometry]:
    ident = TreeIsometry.identity(tree)
    gens = list(gens)
    elems = {ident: None}
    todo = [ident]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g.compose(x)
            if y not in elems:
                elems[y] = None
                if len(elems) > bound:
                    raise TreeError(f"group not certified finite: more than {bound} elements")
                todo.append(y)
    return list(elems)


def finite_group_fixed_point(tree: MetricTree, action: ActionSpec, group_closure_bound: int = 10_000,
                             basepoint: TreePoint | None = None) -> TreePoint:
    group = group_closure(tree, action.generators.values(), group_closure_bound)
    base = basepoint or tree.vertex_point(tree.vertices[0])
    orbit = list(dict.fromkeys(g.apply(base) for g in group))
    c = circumcenter(tree, orbit)
    for g in group:
        if g.apply(c) != c:
            raise ArithmeticError("circumcenter of an orbit is not fixed")
    return c


@dataclass(frozen=True)
class CommonFixResult:
    point: TreePoint | None
    disjoint_pair: tuple[int, int] | None
    fix_sets: tuple[FixSet, ...]

    def to_json(self) -> dict:
        return {"point": self.point.to_json() if self.point else None,
                "disjoint_pair": list(self.disjoint_pair) if self.disjoint_pair else None,
                "fix_sets": [f.to_json() for f in self.fix_sets]}


def common_fixed_point(tree, gens: Sequence, base=None, radius=None) -> CommonFixResult:
    """A point fixed by every generator, or the first pair with disjoint Fix sets.

    Fix sets become vertex sets of the barycentric subdivision, where the
    pairwise test and the total intersection are plain subtree
    intersections.
    """
    fixes = []
    for g in gens:
        c = classify(tree, g, base, radius)
        if c.kind != "elliptic":
            raise TreeError(f"{getattr(g, 'name', 'generator')} is {c.kind}, not elliptic")
        fixes.append(c.fix)
    host = tree.ball(base, radius)[0] if isinstance(tree, OracleTree) else tree
    if not gens:
        return CommonFixResult(host.vertex_point(host.vertices[0]), None, ())
    sub, mids = host.subdivide()
    members = [f.subdivision_vertices(host, mids) for f in fixes]
    fam = ConvexFamily.subtrees(sub.edges(), members)
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            if fam.intersection_witness([i, j]) is None:
                if not (fixes[i].complete and fixes[j].complete):
                    raise TreeError("Fix sets disjoint inside the ball but may meet outside it")
                return CommonFixResult(None, (i, j), tuple(fixes))
    if fam.intersection_witness(range(len(fam))) is None:
        raise ArithmeticError("pairwise intersecting subtrees with empty total intersection")
    # prefer an original vertex over a subdivision midpoint
    common = frozenset.intersection(*fam.members)
    w = min(common, key=lambda x: (isinstance(x, tuple) and bool(x) and x[0] == "mid", host._order.get(x, 0), repr(x)))
    if isinstance(w, tuple) and w and w[0] == "mid":
        pt = host.midpoint(w[1], w[2])
    else:
        pt = host.vertex_point(w)
    for g, f in zip(gens, fixes):
        if pt.is_vertex and g(pt.vertex) != pt.vertex:
            raise ArithmeticError("common point is not fixed")
        if not pt.is_vertex and {g(pt.edge[0]), g(pt.edge[1])} != set(pt.edge):
            raise ArithmeticError("common point is not fixed")
        if not pt.is_vertex and g(pt.edge[0]) == pt.edge[1] and pt.offset * 2 != host.length(*pt.edge):
            raise ArithmeticError("inverted edge fixes only its midpoint")
    return CommonFixResult(pt, None, tuple(fixes))


@dataclass(frozen=True)
class InvarianceReport:
    relation: str  # centralizes | normalizes
    kind: str
    invariant: bool
    translation: Fraction | None
    checked: int

    @property
    def ok(self) -> bool:
        return self.invariant and (self.kind != "hyperbolic" or self.relation != "centralizes"
                                   or self.translation is not None)

    def to_json(self) -> dict:
        return {"relation": self.relation, "kind": self.kind, "invariant": self.invariant,
                "translation": la.frac_str(self.translation) if self.translation is not None else None,
                "checked": self.checked, "ok": self.ok}


def normalizer_invariance_check(tree, g, h, base=None, radius=None) -> InvarianceReport:
    """h g h^-1 = g^(+-1) must hold; then h(minset g) = minset g is checked.

    In the centralizing hyperbolic case h must also translate the axis.
    """
    if isinstance(tree, OracleTree):
        ball, _ = tree.ball(base, radius)
        verts = list(ball.vertices)
    else:
        ball = tree
        verts = list(tree.vertices)
    hinv = h.inverse()
    conj = [h(g(hinv(v))) for v in verts]
    if all(c == g(v) for c, v in zip(conj, verts)):
        relation = "centralizes"
    elif all(g(c) == v for c, v in zip(conj, verts)):
        relation = "normalizes"
    else:
        raise TreeError("h does not normalize <g>")
    c = classify(tree, g, base, radius)
    if c.kind == "inconclusive":
        raise TreeError(f"classification inconclusive: {c.reason}")
    inside = set(ball.vertices)
    if c.kind == "elliptic":
        fx = c.fix
        img_v = {h(v) for v in fx.vertices}
        img_m = {tuple(sorted((h(a), h(b)), key=repr)) for a, b in fx.midpoints}
        own_m = {tuple(sorted(e, key=repr)) for e in fx.midpoints}
        if fx.complete:
            ok = img_v == set(fx.vertices) and img_m == own_m
        else:
            ok = all(w not in inside or w in fx.vertices for w in img_v)
        return InvarianceReport(relation, c.kind, ok, None, len(fx.vertices) + len(fx.midpoints))
    axis = c.axis
    pos = {v: ball.dist(axis[0], v) for v in axis}
    # orient the axis along g
    forward = ball.dist(axis[0], g(axis[0])) == c.tau and pos.get(g(axis[0]), -1) == c.tau
    sign = 1 if forward else -1
    shifts = set()
    ok = True
    checked = 0
    for v in axis:
        hv = h(v)
        if hv not in inside or g(hv) not in inside:
            continue
        checked += 1
        if ball.dist(hv, g(hv)) != c.tau:
            ok = False
            continue
        shifts.add(sign * (ball.dist(axis[0], hv) - pos[v]))
    translation = shifts.pop() if len(shifts) == 1 else None
    if checked == 0:
        raise TreeError("no axis point maps inside the explored ball")
    return InvarianceReport(relation, c.kind, ok, translation, checked)


# -------------------------------------------------------- random fixtures


def random_symmetric_tree(rng: random.Random, depth: int = 3, max_children: int = 3,
                          bicentral: bool | None = None):
    """A random tree built from repeated branches, with its branch swaps.

    Returns (tree, swaps) where each swap is an involutive isometry
    exchanging two identical sibling branches (or the two halves of a
    bicentral tree, which inverts the middle edge).
    """
    counter = [0]
    edges: list = []
    groups: list = []  # lists of branches; a branch is its vertex list in DFS order

    def shape(d):
        if d == 0:
            return []
        kids = []
        for _ in range(rng.randint(0, max_children)):
            s = shape(d - 1)
            kids.append((s, rng.randint(1, 2), rng.randint(1, 2)))
        return kids

    def build(sh) -> list:
        root = counter[0]
        counter[0] += 1
        verts = [root]
        for sub, mult, ln in sh:
            copies = []
            for _ in range(mult):
                branch = build(sub)
                edges.append((root, branch[0], ln))
                copies.append(branch)
                verts.extend(branch)
            if mult > 1:
                groups.append(copies)
        return verts

    top = shape(depth)
    if bicentral is None:
        bicentral = rng.random() < 0.3
    if bicentral:
        left = build(top)
        right = build(top)
        edges.append((left[0], right[0], rng.randint(1, 2)))
        groups.append([left, right])
    else:
        sh = [(top, rng.randint(2, 3), 1)]
        build(sh)
    tree = MetricTree(edges, vertices=[0])
    swaps = []
    for copies in groups:
        for a, b in zip(copies, copies[1:]):
            m = dict(zip(a, b))
            m.update(zip(b, a))
            swaps.append(TreeIsometry(tree, m, check=False))
    return tree, swaps


def random_elliptic_family(rng: random.Random, tree: MetricTree, swaps: list, k: int | None = None) -> list:
    k = k or rng.randint(1, 4)
    fam = []
    for _ in range(k):
        g = TreeIsometry.identity(tree)
        for _ in range(rng.randint(0, 4)):
            if swaps:
                g = rng.choice(swaps).compose(g)
        fam.append(g)
    return fam


def load_action(data) -> tuple:
    """(tree, generators) from JSON; finite trees or the integer-line oracle."""
    if "oracle" not in data:
        spec = ActionSpec.from_json(data)
        return spec.tree, spec.generators
    if data["oracle"] != "integer-line":
        raise TreeError(f"unknown oracle tree {data['oracle']!r}")
    tree = integer_line(data.get("radius", 12))
    gens = {}
    for name, g in data.get("generators", {}).items():
        if "translate" in g:
            gens[name] = line_translation(int(g["translate"]))
        elif "reflect" in g:
            gens[name] = line_reflection(la.parse_frac(g["reflect"]))
        else:
            raise TreeError(f"generator {name!r}: expected 'translate' or 'reflect'")
        gens[name].name = name
    return tree, gens
