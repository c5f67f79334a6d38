from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import box_lattice_points, extreme_points, mixed_area_by_edges, shoelace_twice_area
from toric_hartogs.polytope import (
    LatticePolytope,
    LaurentSupport,
    dim,
    lattice_points,
    minkowski_sum,
    mixed_volume,
    newton_polytope,
    normalized_volume,
    support_function,
)

TRIANGLE = LatticePolytope.hull([(0, 0), (1, 0), (0, 1)])
SQUARE = LatticePolytope.hull([(0, 0), (1, 0), (0, 1), (1, 1)])

points2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
supports2 = st.lists(points2, min_size=1, max_size=7, unique=True)
points3 = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
supports3 = st.lists(points3, min_size=1, max_size=7, unique=True)


def test_newton_polytope_examples():
    assert newton_polytope(LaurentSupport([(0, 0), (1, 0), (0, 1)])).vertices == ((0, 0), (0, 1), (1, 0))
    assert newton_polytope(LaurentSupport([(0, 0), (1, 0), (2, 0)])).vertices == ((0, 0), (2, 0))
    sup = [(0, 0), (2, 0), (0, 2), (1, 1)]
    assert list(newton_polytope(LaurentSupport(sup)).vertices) == extreme_points(sup)
    assert list(newton_polytope(LaurentSupport(sup)).vertices) == [(0, 0), (0, 2), (2, 0)]


def test_support_validation():
    with pytest.raises(ValueError):
        LaurentSupport([])
    with pytest.raises(ValueError):
        LaurentSupport([(0, 0), (0, 0)])


@settings(max_examples=60, deadline=None)
@given(supports2)
def test_hull_matches_bruteforce_2d(sup):
    assert list(newton_polytope(LaurentSupport(sup)).vertices) == extreme_points(sup)


@settings(max_examples=30, deadline=None)
@given(supports3)
def test_hull_matches_bruteforce_3d(sup):
    assert list(newton_polytope(LaurentSupport(sup)).vertices) == extreme_points(sup)


def test_support_function_examples():
    assert support_function(TRIANGLE, (-1, -1)) == -1
    assert support_function(TRIANGLE, (1, 0)) == 0
    for r in range(5):
        assert support_function(LatticePolytope.hull([(0, 1)]), (-1, r)) == r


def test_dimension():
    assert dim(LatticePolytope.hull([(3, 3)])) == 0
    assert dim(LatticePolytope.hull([(0, 0), (3, 0)])) == 1
    assert dim(TRIANGLE) == 2
    assert dim(LatticePolytope.hull([(0, 0, 0), (1, 1, 0), (2, 2, 0), (0, 0, 1)])) == 2
    assert dim(LatticePolytope.empty(2)) == -1


def test_lattice_points_examples():
    assert len(lattice_points(TRIANGLE)) == 3
    big = LatticePolytope.hull([(0, 0), (2, 0), (0, 2)])
    assert sorted(map(tuple, lattice_points(big))) == box_lattice_points(big.vertices)
    assert len(lattice_points(big)) == 6
    assert [tuple(p) for p in lattice_points(LatticePolytope.hull([(5, -7)]))] == [(5, -7)]


@pytest.mark.parametrize("k", range(6))
def test_ehrhart_of_dilated_triangle(k):
    P = LatticePolytope.hull([(0, 0), (k, 0), (0, k)])
    assert len(lattice_points(P)) == (k + 1) * (k + 2) // 2


@settings(max_examples=40, deadline=None)
@given(supports2)
def test_lattice_points_match_bruteforce(sup):
    P = newton_polytope(LaurentSupport(sup))
    assert sorted(map(tuple, lattice_points(P))) == box_lattice_points(P.vertices)


def test_lattice_points_lower_dimensional_in_3d():
    P = LatticePolytope.hull([(0, 0, 0), (2, 2, 0), (0, 0, 2)])
    assert sorted(map(tuple, lattice_points(P))) == box_lattice_points(P.vertices)


def test_normalized_volume_examples():
    assert normalized_volume(TRIANGLE) == 1
    assert normalized_volume(SQUARE) == 2
    assert normalized_volume(LatticePolytope.hull([(0, 0), (3, 1)])) == 0
    cube = LatticePolytope.hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert normalized_volume(cube) == 6
    simplex = LatticePolytope.hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert normalized_volume(simplex) == 1


@settings(max_examples=60, deadline=None)
@given(supports2)
def test_normalized_area_matches_shoelace(sup):
    P = newton_polytope(LaurentSupport(sup))
    expected = shoelace_twice_area(P.vertices) if dim(P) == 2 else 0
    assert normalized_volume(P) == expected


def test_minkowski_examples():
    assert minkowski_sum(TRIANGLE, LatticePolytope.hull([(1, 1)])) == TRIANGLE.translate((1, 1))
    seg1 = LatticePolytope.hull([(0, 0), (1, 0)])
    seg2 = LatticePolytope.hull([(0, 0), (0, 1)])
    assert minkowski_sum(seg1, seg2) == SQUARE
    assert minkowski_sum(TRIANGLE, TRIANGLE) == LatticePolytope.hull([(0, 0), (2, 0), (0, 2)])
    with pytest.raises(ValueError):
        minkowski_sum(TRIANGLE, LatticePolytope.hull([(0, 0, 0)]))


def test_mixed_volume_examples():
    seg1 = LatticePolytope.hull([(0, 0), (1, 0)])
    seg2 = LatticePolytope.hull([(0, 0), (0, 1)])
    assert mixed_volume(seg1, seg2) == 1
    assert mixed_volume(TRIANGLE, TRIANGLE) == 1
    assert mixed_volume(SQUARE, SQUARE) == 2
    with pytest.raises(ValueError):
        mixed_volume(TRIANGLE)


@settings(max_examples=50, deadline=None)
@given(supports2, supports2)
def test_mixed_area_matches_edge_formula(a, b):
    P = newton_polytope(LaurentSupport(a))
    Q = newton_polytope(LaurentSupport(b))
    assert mixed_volume(P, Q) == mixed_area_by_edges(P.vertices, Q.vertices)


@settings(max_examples=15, deadline=None)
@given(st.lists(supports3, min_size=3, max_size=3))
def test_mixed_volume_symmetric_3d(sups):
    Ps = [newton_polytope(LaurentSupport(s)) for s in sups]
    values = {mixed_volume(*perm) for perm in permutations(Ps)}
    assert len(values) == 1


@settings(max_examples=15, deadline=None)
@given(supports3)
def test_mixed_volume_diagonal_3d(sup):
    P = newton_polytope(LaurentSupport(sup))
    assert mixed_volume(P, P, P) == normalized_volume(P)


@settings(max_examples=40, deadline=None)
@given(supports2, supports2, supports2)
def test_mixed_area_is_minkowski_linear(a, b, c):
    P, Q, R = (newton_polytope(LaurentSupport(s)) for s in (a, b, c))
    assert mixed_volume(minkowski_sum(P, Q), R) == mixed_volume(P, R) + mixed_volume(Q, R)


@given(supports2, points2, points2)
def test_support_function_superadditive_and_homogeneous(sup, u, v):
    P = LaurentSupport(sup)
    uv = tuple(a + b for a, b in zip(u, v))
    assert support_function(P, uv) >= support_function(P, u) + support_function(P, v)
    for k in range(4):
        assert support_function(P, tuple(k * x for x in u)) == k * support_function(P, u)


@settings(max_examples=40, deadline=None)
@given(supports2, supports2, points2)
def test_translation_invariance(a, b, m):
    P = newton_polytope(LaurentSupport(a))
    Q = newton_polytope(LaurentSupport(b))
    Pm = newton_polytope(LaurentSupport(a).translate(m))
    assert Pm == P.translate(m)
    assert dim(Pm) == dim(P)
    assert normalized_volume(Pm) == normalized_volume(P)
    assert mixed_volume(Pm, Q) == mixed_volume(P, Q)
