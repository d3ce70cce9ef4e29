"""Three ways the checks can fail, each with its witness.

1. Three distinct lines in the plane: the intersection complex has H_1 = 1.
2. The cutters x, y, x + y on k[x,y]: the Rees module is not flat.
3. k[x,y,z]/(xy + z^3) graded by (3,3,2): the central fiber for cutters
   x, y has zero-divisors.

    python demos/negative_paths.py
"""

from multirees import (
    FiltrationFamily,
    PolynomialRing,
    QuotientRing,
    build_window,
    check_flatness,
    domain_test,
)
from multirees.rees import check_flatness_table

lines = check_flatness_table([{
    "label": "three lines",
    "ncols": 2,
    "M": [[1, 0], [0, 1]],
    "subs": [[[1, 0]], [[0, 1]], [[1, 1]]],
}])
print("three lines:", lines.verdict, "witness", lines.witness)

ring = PolynomialRing(["x", "y"])
F = FiltrationFamily(QuotientRing(ring), ["x", "y", "x + y"])
rep = check_flatness(build_window(F, 3, [2, 2, 2]))
print("cutters x, y, x+y:", rep.verdict, "witness", rep.witness)

ring = PolynomialRing(["x", "y", "z"], grading=[3, 3, 2])
F = FiltrationFamily(QuotientRing(ring, [ring.parse("x*y + z^3")]), ["x", "y"])
dom = domain_test(build_window(F, 8, [2, 2]), 4)
print("xy + z^3:", "pass" if dom.passed else "fail", "witness", [str(e) for e in dom.witness])
print("  z^3 = -xy lies in (x) and (y), so [z] * [z^2] vanishes in the (n=6, m=[0,0]) piece")
