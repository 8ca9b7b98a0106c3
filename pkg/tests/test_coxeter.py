import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hellyfix.coxeter import (CoxeterError, CoxeterMatrix, coxeter_simplex_check, eigen_signature,
                              exact_minor_signs, spherical_triangle)
from oracles import canonical, cosine_det, lanner_search_rank4


def _triangle_oracle(p, q, r):
    s = Fraction(1, p) + Fraction(1, q) + Fraction(1, r)
    return "spherical" if s > 1 else "euclidean" if s == 1 else "hyperbolic"


@pytest.mark.parametrize("pqr", [(3, 3, 3), (2, 3, 7), (2, 3, 6), (2, 3, 5), (4, 4, 4), (2, 4, 4), (2, 2, 9)])
def test_triangles(pqr):
    rep = coxeter_simplex_check(CoxeterMatrix.triangle(*pqr))
    assert rep.classification == _triangle_oracle(*pqr)
    assert rep.proper_parabolics_finite and rep.procedures_agree


def test_summary_strings():
    assert coxeter_simplex_check(CoxeterMatrix.triangle(2, 3, 7)).summary == "hyperbolic; all proper parabolics finite"
    assert coxeter_simplex_check(CoxeterMatrix.triangle(3, 3, 3)).classification == "euclidean"


@given(st.integers(2, 12), st.integers(2, 12), st.integers(2, 12))
def test_triangle_rule_matches_exact_determinant(p, q, r):
    cm = CoxeterMatrix.triangle(p, q, r)
    assert spherical_triangle(p, q, r) == (_triangle_oracle(p, q, r) == "spherical")
    assert coxeter_simplex_check(cm).classification == _triangle_oracle(p, q, r)


def test_a3_and_not_simplex(fixture_path):
    assert coxeter_simplex_check(CoxeterMatrix.load(fixture_path("a3.json"))).classification == "spherical"
    rep = coxeter_simplex_check(CoxeterMatrix.load(fixture_path("not-simplex-363.json")))
    assert rep.classification == "not-simplex"
    assert not rep.proper_parabolics_finite
    # the offending block holds the 6-edge, whose rank-3 parabolic is affine
    assert {1, 2} <= set(rep.offending)


def test_infinite_label_is_rejected(fixture_path):
    with pytest.raises(CoxeterError):
        coxeter_simplex_check(CoxeterMatrix.load(fixture_path("triangle-23inf.json")))


def test_malformed_matrices():
    with pytest.raises(CoxeterError):
        CoxeterMatrix.from_rows([[1, 3], [2, 1]])
    with pytest.raises(CoxeterError):
        CoxeterMatrix.from_rows([[1, 1], [1, 1]])


def test_rank4_fixtures_equal_brute_force_search(fixture_path):
    mats = CoxeterMatrix.load_all(fixture_path("lanner-rank4.json"))
    ours = {canonical(m.entries) for m in mats}
    assert len(mats) == len(ours) == 9
    assert ours == lanner_search_rank4()


@pytest.mark.parametrize("name", ["lanner-rank4.json", "lanner-rank5.json"])
def test_lanner_fixtures(fixture_path, name):
    for cm in CoxeterMatrix.load_all(fixture_path(name)):
        n = cm.order
        for a, b, c in itertools.combinations(range(n), 3):
            e = cm.entries
            assert _triangle_oracle(e[a][b], e[a][c], e[b][c]) == "spherical"
        assert cosine_det(cm.entries) < 0
        rep = coxeter_simplex_check(cm)
        assert rep.classification == "hyperbolic"
        assert rep.proper_parabolics_finite and rep.procedures_agree
        assert rep.nerve_is_simplex_boundary
        assert rep.nerve_betti == tuple(1 if k == n - 2 else 0 for k in range(n - 1))


def test_minor_signs_agree_with_floating_determinants():
    cm = CoxeterMatrix.from_rows([[1, 3, 2, 2], [3, 1, 5, 2], [2, 5, 1, 3], [2, 2, 3, 1]])
    for idx, s in exact_minor_signs(cm).items():
        sub = [[cm.entries[i][j] for j in idx] for i in idx]
        d = cosine_det(sub)
        assert s == (0 if abs(d) < mpmath.mpf(10) ** -40 else (1 if d > 0 else -1))


def test_eigen_signature_affine():
    assert eigen_signature(CoxeterMatrix.triangle(3, 3, 3)) == (2, 1, 0)
    assert eigen_signature(CoxeterMatrix.triangle(2, 3, 7)) == (2, 0, 1)
