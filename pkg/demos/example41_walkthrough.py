"""Walk through the cubic fourfold family with cutters u and v.

The ring is k[u,v,w,x,y,z]/(u^3 - v^3 + (u+v)w^2 + x^3 + y^3 + yz^2).  The
filtrations are the image filtrations of (u) and (v), and the associated
graded ring should be the polynomial ring in u, v, w over the cubic cone
k[x,y,z]/(x^3 + y^3 + yz^2).

    python demos/example41_walkthrough.py
"""

from math import comb

from multirees import (
    FiltrationFamily,
    Ideal,
    PolynomialRing,
    QuotientRing,
    build_window,
    central_fiber,
    check_flatness,
    domain_test,
    fiber_multiply,
    initial_ideal,
    ord_alpha,
    verify_graded_bookkeeping,
    weight_cone_sample,
)
from multirees.rees import FiberElement, fiber_totals

CUBIC = "u^3 - v^3 + (u+v)*w^2 + x^3 + y^3 + y*z^2"

ring = PolynomialRing(["u", "v", "w", "x", "y", "z"])
f = ring.parse(CUBIC)
print("relation:", f)

# Degenerating along the weight (1,1,0,0,0,0) keeps the part of lowest weight.
init = initial_ideal(Ideal(ring, [f]), [1, 1, 0, 0, 0, 0])
print("initial ideal for weight (1,1,0,0,0,0):", init)

R = QuotientRing(ring, [f])
F = FiltrationFamily(R, ["u", "v"])

# Orders for the intersection filtration: u*v lies in (u) and (v), u^2 + v^2 in neither.
for text in ["u*w", "u*v", "u^2 + v^2", "w^3"]:
    g = ring.parse(text)
    res = ord_alpha(F, g, [1, 1], F.cutoff(g.degree()))
    print(f"  ord_(1,1)({text}) = {res.value}")

print("\nflatness on N = 6, W = [4,4] ...")
rep = check_flatness(build_window(F, 6, [4, 4]))
print(f"  {rep.verdict}: {len(rep.cells)} complexes, max positive homology {rep.max_positive_homology()}")

win = build_window(F, 6, [6, 6])
pieces = central_fiber(win)
totals = fiber_totals(pieces)
print("\ncentral fiber dimensions by degree:")
for n in range(7):
    expected = comb(n + 5, 5) - comb(n + 2, 5)
    print(f"  n={n}: {totals[n]:4d}   (Hilbert function of the cubic cone times k[u,v,w]: {expected})")

# Multiply two classes: [u] in (1,(1,0)) and [w] in (1,(0,0)).
u = FiberElement(1, (1, 0), ring.parse("u"))
w = FiberElement(1, (0, 0), ring.parse("w"))
print("\n[u] * [w] =", fiber_multiply(win, u, w))
# Lifts are printed in normal form modulo the relation, so u^3 shows up rewritten.
cube = fiber_multiply(win, fiber_multiply(win, u, u), u)
print("[u]^3 =", cube)

dom = domain_test(win, 2)
print(f"\ndomain test at d=2: {'pass' if dom.passed else 'fail'} ({dom.pairs_checked} products of {dom.basis_size} basis classes)")

for alpha in ([1, 1], [2, 3]):
    book = verify_graded_bookkeeping(win, alpha)
    print(f"bookkeeping for alpha={alpha}: {len(book.levels)} levels, {len(book.mismatches)} mismatches")

cone = weight_cone_sample(win, pieces)
print(f"\nsupport of the fiber: {len(cone.support)} cells, rays {cone.rays}, saturated {cone.saturated}")
