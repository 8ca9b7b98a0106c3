import heapq
import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hellyfix.trees import (ActionSpec, MetricTree, TreeError, TreeIsometry, circumcenter, classify,
                            common_fixed_point, finite_group_fixed_point, fix_subtree, group_closure, integer_line,
                            line_reflection, line_translation, load_action, minset, normalizer_invariance_check,
                            random_elliptic_family, random_symmetric_tree)

FINITE = ["tripod-rotations.json", "path-leaf-swap.json", "edge-inversion.json", "star-swaps.json",
          "double-star.json"]
ORACLE = ["integer-line-reflections.json", "integer-line-translations.json"]


def _action(fixture_path, name):
    return load_action(json.loads(fixture_path(name).read_text()))


def _path2():
    return MetricTree([("a", "m"), ("m", "b")])


# ---------------------------------------------------------- independent distances


def _dijkstra(tree, src):
    dist = {src: Fraction(0)}
    heap = [(Fraction(0), repr(src), src)]
    while heap:
        d, _, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y in tree.adj[x]:
            nd = d + tree.length(x, y)
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, repr(y), y))
    return dist


def _anchors(tree, p):
    """(vertex, distance) pairs reaching p from outside its edge."""
    if p.is_vertex:
        return [(p.vertex, Fraction(0))]
    a, b = p.edge
    return [(a, p.offset), (b, tree.length(a, b) - p.offset)]


def _oracle_dist(tree, apsp, p, q):
    if not p.is_vertex and not q.is_vertex and set(p.edge) == set(q.edge):
        qo = q.offset if q.edge == p.edge else tree.length(*q.edge) - q.offset
        return abs(p.offset - qo)
    return min(dp + apsp[u][v] + dq for u, dp in _anchors(tree, p) for v, dq in _anchors(tree, q))


def _candidates(tree, den):
    yield from (tree.vertex_point(v) for v in tree.vertices)
    for a, b in tree.edges():
        ln = tree.length(a, b)
        k = 1
        while Fraction(k, den) < ln:
            yield tree.point(a, b, Fraction(k, den))
            k += 1


def _brute_circumcenter(tree, pts):
    apsp = {v: _dijkstra(tree, v) for v in tree.vertices}
    den = 12 * max(tree.length(a, b).denominator for a, b in tree.edges())
    best = None
    for c in _candidates(tree, den):
        r = max(_oracle_dist(tree, apsp, c, p) for p in pts)
        if best is None or r < best[0]:
            best = (r, [c])
        elif r == best[0]:
            best[1].append(c)
    return best


# ------------------------------------------------------------------- metric tree


def test_distances_match_dijkstra():
    tree, _ = random_symmetric_tree(random.Random(5), depth=3)
    for v in tree.vertices[:10]:
        ref = _dijkstra(tree, v)
        assert all(tree.dist(v, w) == ref[w] for w in tree.vertices)


def test_tree_validation():
    with pytest.raises(TreeError):
        MetricTree([("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(TreeError):
        MetricTree([("a", "b", "0")])
    with pytest.raises(TreeError):
        TreeIsometry(_path2(), {"a": "m", "m": "a"})


def test_point_normalization():
    t = MetricTree([("u", "v", "3/2")])
    assert t.point("u", "v", 0) == t.vertex_point("u")
    assert t.point("v", "u", Fraction(1, 2)) == t.point("u", "v", 1)
    assert t.point_dist(t.point("u", "v", 1), t.vertex_point("v")) == Fraction(1, 2)


# ------------------------------------------------------------------ classification


def test_identity_is_elliptic_with_full_fix():
    t = _path2()
    c = classify(t, TreeIsometry.identity(t))
    assert c.kind == "elliptic" and c.tau == 0 and c.fix.vertices == frozenset(t.vertices)
    assert minset(t, TreeIsometry.identity(t)).vertices == frozenset(t.vertices)


def test_leaf_swap():
    t = _path2()
    s = TreeIsometry(t, {"a": "b", "b": "a"})
    assert fix_subtree(t, s).vertices == {"m"}
    assert minset(t, s).vertices == {"m"}


def test_edge_inversion_fixes_only_the_midpoint(fixture_path):
    tree, gens = _action(fixture_path, "edge-inversion.json")
    fx = fix_subtree(tree, gens["s"])
    assert not fx.vertices and fx.points(tree) == [tree.midpoint("u", "v")]


def test_line_translation():
    line = integer_line()
    c = classify(line, line_translation(1))
    assert c.kind == "hyperbolic" and c.tau == 1
    ball, _ = line.ball()
    # axis vertices are certified only where the image stays inside the ball
    inside = {v for v in ball.vertices if v + 1 in ball.vertices}
    assert set(c.axis) == inside
    assert set(minset(line, line_translation(1))) == inside
    with pytest.raises(TreeError, match="hyperbolic"):
        fix_subtree(line, line_translation(1))


def test_small_radius_is_inconclusive():
    line = integer_line()
    assert classify(line, line_translation(3), radius=2).kind == "inconclusive"
    assert classify(line, line_reflection(5), radius=2).kind == "inconclusive"
    with pytest.raises(TreeError, match="inconclusive"):
        minset(line, line_translation(3), radius=2)


@pytest.mark.parametrize("name", FINITE)
def test_tau_is_base_independent_on_finite_fixtures(fixture_path, name):
    tree, gens = _action(fixture_path, name)
    for g in gens.values():
        for v in tree.vertices:
            assert max(0, tree.dist(v, g(g(v))) - tree.dist(v, g(v))) == classify(tree, g).tau


@pytest.mark.parametrize("name", ORACLE)
def test_tau_is_base_independent_on_the_line(fixture_path, name):
    line, gens = _action(fixture_path, name)
    for g in gens.values():
        got = [classify(line, g, base=b) for b in (-7, -3, 0, 2, 5, 7)]
        conclusive = {(c.kind, c.tau) for c in got if c.kind != "inconclusive"}
        assert len(conclusive) == 1
        assert sum(c.kind != "inconclusive" for c in got) >= 4


# --------------------------------------------------------------------- circumcenter


def test_circumcenter_examples():
    t = _path2()
    p = t.vertex_point("a")
    assert circumcenter(t, [p]) == p
    assert circumcenter(t, [t.vertex_point("a"), t.vertex_point("b")]) == t.vertex_point("m")
    tri = MetricTree([("c", "x"), ("c", "y"), ("c", "z")])
    pts = [tri.vertex_point(v) for v in "xyz"]
    c = circumcenter(tri, pts)
    assert c == tri.vertex_point("c")
    assert max(tri.point_dist(c, q) for q in pts) == 1


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_circumcenter_against_exhaustive_minimization(seed):
    rng = random.Random(seed)
    tree, _ = random_symmetric_tree(rng, depth=2)
    verts = list(tree.vertices)
    pts = [tree.vertex_point(v) for v in rng.sample(verts, min(len(verts), rng.randint(1, 4)))]
    if rng.random() < 0.5:
        a, b = rng.choice(tree.edges())
        pts.append(tree.point(a, b, tree.length(a, b) / 3))
    radius, best = _brute_circumcenter(tree, pts)
    c = circumcenter(tree, pts)
    assert best == [c]
    assert max(tree.point_dist(c, p) for p in pts) == radius


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_circumcenter_is_equivariant(seed):
    rng = random.Random(seed)
    tree, swaps = random_symmetric_tree(rng)
    g = random_elliptic_family(rng, tree, swaps, k=1)[0]
    verts = list(tree.vertices)
    pts = [tree.vertex_point(v) for v in rng.sample(verts, min(len(verts), rng.randint(1, 5)))]
    assert circumcenter(tree, [g.apply(p) for p in pts]) == g.apply(circumcenter(tree, pts))
    # invariant sets have fixed circumcenters
    orbit = list(dict.fromkeys(h.apply(p) for p in pts for h in group_closure(tree, [g])))
    assert g.apply(circumcenter(tree, orbit)) == circumcenter(tree, orbit)


# ----------------------------------------------------------------- finite groups


def test_finite_group_fixed_points(fixture_path):
    spec = ActionSpec.load(fixture_path("tripod-rotations.json"))
    assert finite_group_fixed_point(spec.tree, spec) == spec.tree.vertex_point("c")
    spec = ActionSpec.load(fixture_path("edge-inversion.json"))
    assert finite_group_fixed_point(spec.tree, spec) == spec.tree.midpoint("u", "v")
    trivial = ActionSpec(spec.tree, {})
    base = spec.tree.vertex_point("v")
    assert finite_group_fixed_point(spec.tree, trivial, basepoint=base) == base


def test_closure_bound():
    spec = ActionSpec.from_json({"tree": {"edges": [["c", "a"], ["c", "b"], ["c", "d"]]},
                                 "generators": {"r": {"a": "b", "b": "d", "d": "a"}}})
    with pytest.raises(TreeError, match="group not certified finite"):
        finite_group_fixed_point(spec.tree, spec, group_closure_bound=2)
    with pytest.raises(TreeError, match="relator"):
        ActionSpec.from_json({"tree": {"edges": [["c", "a"], ["c", "b"], ["c", "d"]]},
                              "generators": {"r": {"a": "b", "b": "d", "d": "a"}}, "relators": ["r r"]})


# ------------------------------------------------------------- common fixed point


def test_common_fixed_point_examples(fixture_path):
    tree, gens = _action(fixture_path, "star-swaps.json")
    res = common_fixed_point(tree, list(gens.values()))
    assert res.point == tree.vertex_point("c")
    ident = TreeIsometry.identity(tree)
    assert common_fixed_point(tree, [ident, ident]).point is not None
    tree, gens = _action(fixture_path, "double-star.json")
    res = common_fixed_point(tree, [gens["c"]])
    assert res.point == tree.midpoint("p", "q")
    assert tree.point_dist(res.point, tree.vertex_point("p")) == Fraction(3, 4)


def test_disjoint_fix_sets_on_the_line(fixture_path):
    line, gens = _action(fixture_path, "integer-line-reflections.json")
    res = common_fixed_point(line, [gens["r0"], gens["r4"]])
    assert res.point is None and res.disjoint_pair == (0, 1)
    assert {f.vertices for f in res.fix_sets} == {frozenset([0]), frozenset([4])}


def test_common_fixed_point_errors(fixture_path):
    line = integer_line()
    with pytest.raises(TreeError, match="not elliptic"):
        common_fixed_point(line, [line_translation(1)])
    # Fix sets of a pair of identical reflections are a single point: no error
    assert common_fixed_point(line, [line_reflection(2), line_reflection(2)]).point.vertex == 2


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_common_fixed_point_on_random_elliptic_families(seed):
    rng = random.Random(seed)
    tree, swaps = random_symmetric_tree(rng)
    fam = random_elliptic_family(rng, tree, swaps)
    res = common_fixed_point(tree, fam)
    fixed = [frozenset(v for v in tree.vertices if g(v) == v) for g in fam]
    if all(a & b for a, b in itertools.combinations(fixed, 2)) and frozenset.intersection(*fixed):
        assert res.point is not None
    if res.point is not None:
        assert all(g.apply(res.point) == res.point for g in fam)


# ---------------------------------------------------------------- normalizers


def test_normalizer_examples(fixture_path):
    line = integer_line()
    t1, t2 = line_translation(1), line_translation(2)
    rep = normalizer_invariance_check(line, t1, t2)
    assert rep.ok and rep.relation == "centralizes" and rep.translation == 2
    assert normalizer_invariance_check(line, t1, t1).ok
    tree, gens = _action(fixture_path, "path-leaf-swap.json")
    rep = normalizer_invariance_check(tree, TreeIsometry.identity(tree), gens["s"])
    assert rep.ok and rep.kind == "elliptic" and rep.checked == len(tree.vertices)
    rep = normalizer_invariance_check(line, t1, line_reflection(0))
    assert rep.ok and rep.relation == "normalizes"


def test_normalizer_hypothesis_failure(fixture_path):
    line, gens = _action(fixture_path, "integer-line-reflections.json")
    with pytest.raises(TreeError, match="normalize"):
        normalizer_invariance_check(line, gens["r0"], gens["r4"])


@pytest.mark.parametrize("name", FINITE + ORACLE)
def test_axis_and_fix_invariance_on_fixtures(fixture_path, name):
    tree, gens = _action(fixture_path, name)
    checked = 0
    for g, h in itertools.product(gens.values(), repeat=2):
        try:
            rep = normalizer_invariance_check(tree, g, h)
        except TreeError as e:
            assert "normalize" in str(e)
            continue
        assert rep.ok
        checked += 1
    assert checked >= len(gens)
