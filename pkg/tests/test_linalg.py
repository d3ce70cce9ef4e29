from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from multirees import Subspace
from multirees.cone import RationalCone, extreme_rays, primitive
from multirees.linalg import bareiss_det, bareiss_rank, matmul, rank

entries = st.integers(-3, 3)


def matrices(rows=(0, 6), cols=(1, 6)):
    return st.integers(*cols).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=rows[0], max_size=rows[1])
        .map(lambda m: (c, m))
    )


def vecs(m):
    return [dict(enumerate(r)) for r in m]


@given(matrices())
def test_rank_three_ways(cm):
    c, m = cm
    expected = sympy.Matrix(m).rank() if m else 0
    assert rank(vecs(m), c, "first") == expected
    assert rank(vecs(m), c, "last") == expected
    assert bareiss_rank(m) == expected


@given(matrices(rows=(1, 5)))
def test_rows_are_reduced_echelon(cm):
    c, m = cm
    S = Subspace.span(c, vecs(m))
    for row, p in zip(S.rows, S.pivots):
        assert row[p] > 0
        for other in S.rows:
            if other is not row:
                assert p not in other
    for v in vecs(m):
        assert S.contains(v)
        assert not S.residue(v)


@given(matrices(rows=(0, 4)), matrices(rows=(0, 4)))
def test_intersection_dimension_formula(a, b):
    c = a[0]
    B = [r[:c] + [0] * (c - len(r)) for r in b[1]]
    SA, SB = Subspace.span(c, vecs(a[1])), Subspace.span(c, vecs(B))
    inter = SA.intersect(SB)
    assert inter.dim == SA.dim + SB.dim - SA.sum(SB).dim
    assert SA.contains_space(inter) and SB.contains_space(inter)


@given(matrices(rows=(1, 4)))
def test_coordinates_reconstruct(cm):
    c, m = cm
    S = Subspace.span(c, vecs(m))
    for v in vecs(m):
        coords = S.coordinates(v)
        rebuilt = {}
        for k, row in zip(coords, S.rows):
            for j, x in row.items():
                rebuilt[j] = rebuilt.get(j, 0) + k * x
        assert {j: x for j, x in rebuilt.items() if x} == {j: x for j, x in v.items() if x}


def test_coordinates_reject_outside_vector():
    S = Subspace.span(3, [{0: 1, 1: 1}])
    with pytest.raises(ValueError):
        S.coordinates({0: 1})


def test_fraction_rows_are_cleared():
    S = Subspace.span(2, [{0: Fraction(1, 2), 1: Fraction(1, 3)}])
    assert S.rows == ({0: 3, 1: 2},)
    assert S.contains({0: Fraction(3, 7), 1: Fraction(2, 7)})


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                       min_size=n, max_size=n)))
def test_bareiss_det_matches_sympy(m):
    assert bareiss_det(m) == sympy.Matrix(m).det()


def test_matmul_small():
    a = [{0: 1, 1: 2}, {1: 1}]
    b = [{0: 1}, {0: -1, 1: 3}]
    assert matmul(a, b) == [{0: -1, 1: 6}, {0: -1, 1: 3}]


# --- cones ------------------------------------------------------------------------


def test_cone_of_the_plane_triangle():
    pts = [(n, a, b) for n in range(4) for a in range(4) for b in range(4) if a + b <= n]
    C = RationalCone(pts)
    assert sorted(C.rays) == [(1, 0, 0), (1, 0, 1), (1, 1, 0)]
    assert C.contains((2, 1, 1)) and not C.contains((2, 2, 1))


def test_cone_lower_dimensional_and_degenerate():
    assert extreme_rays([(1, 1, 0), (2, 2, 0), (0, 1, 0)]) == [(0, 1, 0), (1, 1, 0)]
    assert extreme_rays([(3, 6)]) == [(1, 2)]
    assert RationalCone([]).rays == ()
    with pytest.raises(ValueError):
        RationalCone([(1, 0), (-1, 0)])


def test_primitive():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert primitive((0, 0)) == (0, 0)


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4)),
                min_size=1, max_size=8))
def test_rays_generate_the_same_cone(points):
    C = RationalCone(points)
    rays = C.rays
    assert set(rays) <= {primitive(p) for p in points}
    R = RationalCone(rays)
    assert all(R.contains(p) for p in points)
    for r in rays:
        others = [q for q in points if primitive(q) != r]
        if others:
            assert not RationalCone(others).contains(r)


@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)))
def test_simplicial_membership_matches_coordinates(p):
    rays = [(1, 0, 0), (1, 2, 0), (1, 1, 3)]
    C = RationalCone(rays)
    coeffs = sympy.Matrix(rays).T.solve(sympy.Matrix(p))
    assert C.contains(p) == all(c >= 0 for c in coeffs)


def test_box_points_of_cone():
    C = RationalCone([(1, 0), (1, 2)])
    inside = [p for p in product(range(-2, 3), repeat=2) if C.contains(p)]
    assert inside == [(0, 0), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
