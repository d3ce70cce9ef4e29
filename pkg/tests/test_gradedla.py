import pytest
from hypothesis import given
from hypothesis import strategies as st

from multirees import (
    Ideal,
    PolynomialRing,
    Subspace,
    build_intersection_complex,
    degree_slice,
    homology_dims,
    multi_piece,
)
from multirees.gradedla import (
    ContainmentError,
    complex_from_subspaces,
    degree_slice_dim_groebner,
    euler_characteristic,
    full_slice,
    intersect_slices,
    zero_slice,
)
from multirees.quotient import polynomial_ring_quotient

from .strategies import R3, homogeneous

R2 = PolynomialRing(["x", "y"])
P2 = polynomial_ring_quotient(R2)


def span(ncols, rows):
    return Subspace.span(ncols, [dict(enumerate(r)) for r in rows])


THREE_LINES = (span(2, [[1, 0], [0, 1]]), [span(2, [[1, 0]]), span(2, [[0, 1]]), span(2, [[1, 1]])])


def test_slice_examples(cubic, quotient41):
    assert degree_slice(Ideal(R2, ["x", "y"]), 2).dim == 3
    assert degree_slice(Ideal(cubic.ring, [cubic]), 3).dim == 1
    assert full_slice(quotient41, 4).dim == 120
    assert degree_slice(quotient41.whole(), 4).dim == 120
    assert degree_slice(quotient41.ideal([cubic]), 3).dim == 0


def test_slice_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        degree_slice(Ideal(R2, ["x + y^2"]), 2)


def test_intersection_examples():
    a = degree_slice(Ideal(R2, ["x^2"]), 5)
    b = degree_slice(Ideal(R2, ["y^3"]), 5)
    both = intersect_slices([a, b])
    assert both.dim == 1
    assert both.contains(R2.parse("x^2*y^3"))
    assert intersect_slices([a, full_slice(P2, 5)]).basis.equals(a.basis)
    assert intersect_slices([a, a]).dim == a.dim


def test_intersection_degree_mismatch():
    with pytest.raises(ValueError):
        intersect_slices([full_slice(P2, 2), full_slice(P2, 3)])


def test_three_lines_complex():
    C = complex_from_subspaces(*THREE_LINES)
    assert C.term_dims() == [2, 3, 0, 0]
    assert C.is_complex()
    assert homology_dims(C) == [0, 1, 0, 0]


def test_one_sub_object():
    M = span(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    C = complex_from_subspaces(M, [span(3, [[1, 1, 0]])])
    assert homology_dims(C) == [2, 0]


def test_regular_sequence_complex():
    for n in range(2, 6):
        C = build_intersection_complex(P2.whole(), [P2.ideal(["x"]), P2.ideal(["y"])], n)
        assert C.is_complex()
        assert homology_dims(C) == [0, 0, 0]
    C = build_intersection_complex(P2.whole(), [P2.ideal(["x"]), P2.ideal(["y"])], 0)
    assert homology_dims(C) == [1, 0, 0]


def test_cubic_complex_at_degree_three(family41):
    M = multi_piece(family41, (1, 1), 3)
    subs = [multi_piece(family41, (2, 1), 3), multi_piece(family41, (1, 2), 3)]
    C = build_intersection_complex(M, subs, 3)
    assert C.is_complex()
    h = homology_dims(C)
    assert h[1:] == [0, 0]
    # J(1,1)_3 = u*v*(linear forms); modulo u^2*v and u*v^2 the classes of uv*{w,x,y,z} remain
    assert (M.dim, h[0]) == (6, 4)
    assert h[0] == M.dim - subs[0].basis.sum(subs[1].basis).dim


def test_containment_is_enforced():
    with pytest.raises(ContainmentError):
        complex_from_subspaces(span(2, [[1, 0]]), [span(2, [[0, 1]])])
    with pytest.raises(ContainmentError):
        build_intersection_complex(P2.ideal(["x"]), [P2.ideal(["y"])], 2)


def test_zero_complex():
    Z = zero_slice(P2, 3)
    assert homology_dims(build_intersection_complex(Z, [Z, Z], 3)) == [0, 0, 0]


def random_subspaces(max_subs):
    dim = st.integers(1, 5)
    return dim.flatmap(lambda n: st.lists(
        st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=3),
        min_size=1, max_size=max_subs,
    ).map(lambda subs: (n, subs)))


@given(random_subspaces(4))
def test_complex_properties(data):
    n, subs = data
    M = Subspace.full(n)
    S = [span(n, s) for s in subs]
    C = complex_from_subspaces(M, S)
    assert C.is_complex()
    h = homology_dims(C)
    assert h == homology_dims(C, pivot_rule="last")
    assert C.ranks("first") == C.ranks("last")
    assert euler_characteristic(C.term_dims()) == euler_characteristic(h)
    assert h[0] == M.dim - S[0].sum(*S[1:]).dim
    assert all(x >= 0 for x in h)
    if len(S) <= 2:
        assert all(x == 0 for x in h[1:])


@given(st.lists(homogeneous(), min_size=1, max_size=3), st.integers(0, 5))
def test_slice_dimension_two_routes(gens, n):
    I = Ideal(R3, gens)
    assert degree_slice(I, n).dim == degree_slice_dim_groebner(I, n)
