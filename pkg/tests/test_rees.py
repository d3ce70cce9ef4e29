import json
from itertools import product
from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multirees import (
    BudgetExceeded,
    Subspace,
    FiltrationFamily,
    OutOfWindow,
    PolynomialRing,
    QuotientRing,
    build_window,
    central_fiber,
    check_flatness,
    check_flatness_table,
    domain_test,
    fiber_multiply,
    verify_graded_bookkeeping,
    weight_cone_sample,
)
from multirees.quotient import polynomial_ring_quotient
from multirees.rees import (
    FiberElement,
    alpha_fiber_table,
    fiber_totals,
    is_zero_class,
    support_scan,
)

from .test_filtration import groebner_dim

GOLDEN = Path(__file__).parent / "golden" / "example41_window.json"


def poly_family(names, cutters=None):
    R = PolynomialRing(names)
    return FiltrationFamily(polynomial_ring_quotient(R), cutters or names)


@pytest.fixture(scope="module")
def window41(family41):
    return build_window(family41, 4, (4, 4))


@pytest.fixture(scope="module")
def weighted():
    R = PolynomialRing(["x", "y", "z"], grading=(3, 3, 2))
    F = FiltrationFamily(QuotientRing(R, [R.parse("x*y + z^3")]), ["x", "y"])
    return build_window(F, 8, (2, 2))


def test_window_counts_monomials():
    w = build_window(poly_family(["x", "y"]), 3, (2, 2))
    assert w.dims() == {(n, m): max(0, n - m[0] - m[1] + 1)
                        for n in range(4) for m in product(range(3), repeat=2)}
    assert w.t_action_holds()


def test_window_one_variable():
    w = build_window(poly_family(["x"]), 5, (6,))
    assert all(d == (1 if n >= m[0] else 0) for (n, m), d in w.dims().items())


def test_window_budget():
    with pytest.raises(BudgetExceeded):
        build_window(poly_family(["x", "y"]), 3, (2, 2), max_cells=10)


def test_golden_table(family41, ring6, cubic):
    golden = json.loads(GOLDEN.read_text())
    w = build_window(family41, golden["N"], golden["W"])
    dims = {f"{n},{m[0]},{m[1]}": d for (n, m), d in w.dims().items()}
    assert dims == golden["dims"]
    for key in ["3,1,1", "4,2,1", "5,1,2", "6,2,2", "6,3,1", "5,4,0", "6,0,4"]:
        n, a, b = map(int, key.split(","))
        assert golden["dims"][key] == groebner_dim(ring6, cubic, (a, b), n), key
    assert w.t_action_holds()


@pytest.mark.parametrize("r, N", [(1, 6), (2, 5), (3, 4), (4, 3)])
def test_regular_sequences_are_flat(r, N):
    names = [f"x{i}" for i in range(r)]
    rep = check_flatness(build_window(poly_family(names), N, (2,) * r))
    assert rep.certified and rep.witness is None
    assert rep.max_positive_homology() == 0
    assert len(rep.cells) == 2 ** r * 3 ** r * (N + 1)


def test_cubic_window_is_flat(window41):
    rep = check_flatness(window41)
    assert rep.verdict == "certified-on-window"
    assert all(dd_zero for *_, dd_zero in rep.cells)


def test_threads_do_not_change_the_report(window41):
    a = check_flatness(window41)
    b = check_flatness(window41, threads=4)
    assert [c[:4] for c in a.cells] == [c[:4] for c in b.cells]
    keys = [(len(c[0]), c[0], c[1], c[2]) for c in b.cells]
    assert keys == sorted(keys)


def test_three_lines_violation():
    rep = check_flatness_table([{"ncols": 2, "M": [[1, 0], [0, 1]],
                                 "subs": [[[1, 0]], [[0, 1]], [[1, 1]]]}])
    assert rep.verdict == "violation"
    assert rep.witness == {"subset": [1, 2, 3], "m": [0], "n": 0, "p": 1, "dim": 1}


def test_non_flat_family_is_detected():
    # three cutters x, y, x + y in k[x, y]: three lines through the origin
    F = poly_family(["x", "y"], ["x", "y", "x + y"])
    rep = check_flatness(build_window(F, 2, (1, 1, 1)))
    assert rep.verdict == "violation"
    w = rep.witness
    assert w["subset"] == [1, 2, 3] and w["p"] == 1 and w["dim"] >= 1


def test_central_fiber_totals(family41):
    w = build_window(family41, 5, (5, 5))
    totals = fiber_totals(central_fiber(w))
    assert [totals[n] for n in range(6)] == [comb(n + 5, 5) - comb(n + 2, 5) for n in range(6)]


def test_single_cutter_fiber():
    w = build_window(poly_family(["x", "y"], ["x"]), 4, (6,))
    for (n, m), p in central_fiber(w).items():
        assert p.dim == (1 if m[0] <= n else 0)


def test_piece_invariants(window41):
    for (n, m), p in central_fiber(window41).items():
        assert p.dim == p.top.dim - p.denominator.dim
        residues = [p.denominator.basis.residue(p.top.quotient.vector(f, n)) for f in p.representatives]
        assert len(residues) == p.dim
        assert Subspace.span(p.top.ambient_dim, residues).dim == p.dim


def test_fiber_multiply_examples(window41, ring6):
    u = FiberElement(1, (1, 0), ring6.parse("u"))
    v = FiberElement(1, (0, 1), ring6.parse("v"))
    uv = fiber_multiply(window41, u, v)
    assert (uv.n, uv.m) == (2, (1, 1)) and uv.lift == ring6.parse("u*v")
    one = FiberElement(0, (0, 0), ring6.one())
    for p in central_fiber(window41).values():
        if p.n <= 2:
            for a in p.elements():
                assert fiber_multiply(window41, one, a) == a
    with pytest.raises(OutOfWindow):
        fiber_multiply(window41, FiberElement(3, (0, 0), ring6.parse("x^3")),
                       FiberElement(2, (0, 0), ring6.parse("x^2")))


def test_fiber_multiply_kills_higher_terms(window41, ring6):
    # read in piece (1,(0,0)) the class of u is zero, so u*w dies in (2,(0,0));
    # read in piece (1,(1,0)) it is nonzero and u*x survives in (2,(1,0))
    u = FiberElement(1, (0, 0), ring6.parse("u"))
    w = FiberElement(1, (0, 0), ring6.parse("w"))
    assert is_zero_class(fiber_multiply(window41, u, w))
    ux = fiber_multiply(window41, FiberElement(1, (1, 0), ring6.parse("u")),
                        FiberElement(1, (0, 0), ring6.parse("x")))
    assert not is_zero_class(ux)


def basis_upto(window, d):
    out = []
    for (n, m), p in sorted(central_fiber(window).items()):
        if n <= d:
            out.extend(p.elements())
    return out


@given(st.data())
def test_fiber_multiply_commutative_associative(window41, data):
    basis = basis_upto(window41, 1)
    a, b, c = (data.draw(st.sampled_from(basis)) for _ in range(3))
    ab = fiber_multiply(window41, a, b)
    assert ab == fiber_multiply(window41, b, a)
    assert fiber_multiply(window41, ab, c) == fiber_multiply(window41, a, fiber_multiply(window41, b, c))


def test_domain_test_on_the_cubic(window41):
    res = domain_test(window41, 2)
    assert res.passed and res.basis_size == 28
    with pytest.raises(OutOfWindow):
        domain_test(window41, 3)


def test_domain_test_counterexample(weighted):
    res = domain_test(weighted, 4)
    assert not res.passed
    a, b = res.witness
    assert (str(a.lift), str(b.lift)) == ("z", "z^2")
    # z^3 = -x*y lies in J(1,0): the product dies in piece (6,(0,0))
    assert is_zero_class(fiber_multiply(weighted, a, b))
    assert domain_test(weighted, 3).passed


def test_xy_product_survives_in_weighted_example(weighted):
    R = weighted.quotient.ring
    x = FiberElement(3, (1, 0), R.parse("x"))
    y = FiberElement(3, (0, 1), R.parse("y"))
    assert not is_zero_class(fiber_multiply(weighted, x, y))


def test_zero_ring_is_vacuous():
    R = PolynomialRing(["x", "y"])
    F = FiltrationFamily(QuotientRing(R, ["1"]), ["x"])
    w = build_window(F, 4, (4,))
    assert domain_test(w, 2).passed
    assert weight_cone_sample(w).empty


@pytest.mark.parametrize("alpha", [(1, 1), (1, 2), (2, 3)])
def test_bookkeeping_on_the_cubic(window41, alpha):
    rep = verify_graded_bookkeeping(window41, alpha)
    assert rep.ok
    assert rep.totals() == {n: comb(n + 5, 5) - comb(n + 2, 5) for n in range(5)}


def test_bookkeeping_single_cutter():
    w = build_window(poly_family(["x", "y"], ["x"]), 4, (4,))
    rep = verify_graded_bookkeeping(w, (1,))
    assert rep.ok
    assert {(n, lam) for n, lam, _, _ in rep.levels} == {(n, m) for n in range(5) for m in range(5)}


def test_bookkeeping_rejects_bad_alpha(window41):
    with pytest.raises(ValueError):
        verify_graded_bookkeeping(window41, (0, 1))


@given(st.tuples(st.fractions(min_value="1/3", max_value=4, max_denominator=3),
                 st.fractions(min_value="1/3", max_value=4, max_denominator=3)))
def test_alpha_independence(window41, alpha):
    dims = {k: p.dim for k, p in central_fiber(window41).items()}
    assert alpha_fiber_table(window41, alpha) == dims
    assert verify_graded_bookkeeping(window41, alpha).ok


def test_weight_cone_polynomial_ring():
    # the fiber is k[x, y] with x in (1, (1, 0)) and y in (1, (0, 1)): support on a + b = n
    w = build_window(poly_family(["x", "y"]), 4, (4, 4))
    s = weight_cone_sample(w)
    assert s.support == [(n, a, n - a) for n in range(5) for a in range(n + 1)]
    assert s.rays == [(1, 0, 1), (1, 1, 0)]
    assert s.saturated
    # adding a variable outside both cutters fills in the (1, 0, 0) direction
    s = weight_cone_sample(build_window(poly_family(["x", "y", "z"], ["x", "y"]), 4, (4, 4)))
    assert s.support == [(n, a, b) for n in range(5) for a in range(5) for b in range(5) if a + b <= n]
    assert s.rays == [(1, 0, 0), (1, 0, 1), (1, 1, 0)]


def test_weight_cone_cubic(window41):
    s = weight_cone_sample(window41)
    assert s.support == support_scan(window41)
    assert set(s.support) == {(n, a, b) for n in range(5) for a in range(5) for b in range(5) if a + b <= n}
    assert s.saturated


def test_weight_cone_weighted_has_holes(weighted):
    s = weight_cone_sample(weighted)
    assert s.support == support_scan(weighted)
    assert not s.saturated and (1, 0, 0) in s.holes
