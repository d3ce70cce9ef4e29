"""Divisors on the quadric cone, the affine toric surface with rays (1,0), (1,2).

Its class group is Z/2, so D_1 is not Cartier but 2 D_1 is.  The script
prints the Cartier data for a few divisors and runs the two lattice-point
checks on the box [-5,5]^2.

    python demos/toric_quadric.py
"""

from multirees import ToricModel, check_noncartier_sum, check_valuative_ideal, is_cartier
from multirees.toric import QUADRIC_CONE, cartier_index, divisor_sections, dual_monoid_points

T = ToricModel(QUADRIC_CONE)
print(T)
print("dual cone points with |u_i| <= 2:", dual_monoid_points(T, 2))

for L in ([1, 0], [2, 0], [0, 1], [1, 1], [3, -1]):
    res = is_cartier(T, L)
    u = "(" + ", ".join(str(x) for x in res.u) + ")"
    print(f"L = {L}: pairing solution u = {u}, Cartier {res.cartier}, index {cartier_index(T, L)}")

L = [1, 0]
print("\nsections of D_1 near the origin:")
for u, tags in divisor_sections(T, L, 2)[:6]:
    print(f"  u = {u}  tags = {tags}")

chk = check_noncartier_sum(T, L, 5)
print(f"\nevery section of D_1 vanishes on some D_i: {chk.passed} ({chk.checked} sections)")

for alpha in ([1, 1], [1, 2], [2, 3]):
    results = [check_valuative_ideal(T, L, alpha, lam, 5) for lam in (0, 1, 2)]
    print(f"valuative ideal check alpha={alpha}: {all(r.passed for r in results)}")

# The same surface as the standard cone in a finer lattice N = Z^2 + Z(1/2, 1/2).
T2 = ToricModel([[1, 0], [0, 1]], overlattice=[["1/2", "1/2"]])
print(f"\n{T2}: lattice index {T2.lattice_index()}, D_1 order {is_cartier(T2, [1, 0]).order}")
