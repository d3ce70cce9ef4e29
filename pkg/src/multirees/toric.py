"""Simplicial affine toric models: lattice points, valuations, Cartier tests.

Conventions: div(χ^u) = Σ ⟨u, e_i⟩ D_i, and the sections of L = Σ c_i D_i
are the characters χ^u with ⟨u, e_i⟩ + c_i >= 0 for every ray.  The tag of
a section is the vector (⟨u, e_i⟩ + c_i)_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .linalg import bareiss_det


def _solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of the square system A x = b over Q, or None if singular."""
    n = len(A)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                k = m[i][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[c])]
    return [row[n] for row in m]


def _inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    cols = [_solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        raise ValueError("matrix is singular")
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _hermite_rows(gens: Sequence[Sequence[int]], r: int) -> list[list[int]]:
    """Row basis (upper triangular) of the Z-span of integer vectors in Z^r."""
    rows = [list(g) for g in gens if any(g)]
    basis = []
    for c in range(r):
        live = [v for v in rows if v[c]]
        rest = [v for v in rows if not v[c]]
        while len(live) > 1:
            live.sort(key=lambda v: abs(v[c]))
            head = live[0]
            nxt = [head]
            for v in live[1:]:
                q = v[c] // head[c]
                w = [a - q * b for a, b in zip(v, head)]
                if w[c]:
                    nxt.append(w)
                elif any(w):
                    rest.append(w)
            live = nxt
        if live:
            basis.append(live[0])
        rows = [v for v in rest if any(v)]
    return basis


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class ToricModel:
    """Simplicial full-dimensional cone spanned by r rays in a lattice N ⊇ Z^r.

    ``overlattice`` lists extra (rational) generators of N beyond Z^r.  The
    dual lattice M is then a sublattice of Z^r, so box enumeration runs over
    integer points and filters by the pairing.
    """

    def __init__(self, rays: Sequence[Sequence[int]], overlattice: Iterable[Sequence] = ()):
        rays = [tuple(int(x) for x in e) for e in rays]
        r = len(rays)
        if r == 0 or any(len(e) != r for e in rays):
            raise ValueError("need r rays in Z^r (simplicial, full dimensional)")
        if bareiss_det([list(e) for e in rays]) == 0:
            raise ValueError("rays must be linearly independent")
        extra = [tuple(Fraction(x) for x in g) for g in overlattice]
        if any(len(g) != r for g in extra):
            raise ValueError("overlattice generators must have length r")
        den = 1
        for g in extra:
            for x in g:
                den = lcm(den, x.denominator)
        scaled = [[den * int(i == j) for j in range(r)] for i in range(r)]
        scaled += [[int(x * den) for x in g] for g in extra]
        hnf = _hermite_rows(scaled, r)
        self.r = r
        self.rays = tuple(rays)
        self.overlattice = tuple(extra)
        self.n_basis = tuple(tuple(Fraction(x, den) for x in row) for row in hnf)
        inv = _inverse(self.n_basis)
        # columns of the inverse pair to the identity with the N basis rows
        self.m_basis = tuple(tuple(inv[i][j] for i in range(r)) for j in range(r))
        for e in rays:
            if not self.in_N(e):
                raise ValueError(f"ray {e} is not in N")
            pairings = [_dot(m, e) for m in self.m_basis]
            if gcd(*(int(p) for p in pairings)) != 1:
                raise ValueError(f"ray {e} is not primitive in N")

    def __repr__(self):
        extra = f", overlattice={[list(map(str, g)) for g in self.overlattice]}" if self.overlattice else ""
        return f"ToricModel(rays={[list(e) for e in self.rays]}{extra})"

    def in_M(self, u: Sequence) -> bool:
        return all(Fraction(_dot(u, b)).denominator == 1 for b in self.n_basis)

    def in_N(self, v: Sequence) -> bool:
        return all(Fraction(_dot(m, v)).denominator == 1 for m in self.m_basis)

    def pairings(self, u: Sequence) -> tuple:
        return tuple(_dot(u, e) for e in self.rays)

    def in_dual_cone(self, u: Sequence) -> bool:
        return all(p >= 0 for p in self.pairings(u))

    def lattice_index(self) -> int:
        """[N : Z e_1 + ... + Z e_r], a bound for the Cartier index of any divisor."""
        det_rays = abs(Fraction(bareiss_det([list(e) for e in self.rays])))
        det_n = abs(_det_fraction(self.n_basis))
        return int(det_rays / det_n)


def _det_fraction(A) -> Fraction:
    den = 1
    for row in A:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return Fraction(bareiss_det([[int(Fraction(x) * den) for x in row] for row in A]), den ** len(A))


@dataclass(frozen=True)
class LatticeBox:
    lower: tuple
    upper: tuple

    @classmethod
    def cube(cls, r: int, radius: int) -> "LatticeBox":
        return cls((-radius,) * r, (radius,) * r)

    def enlarged(self, k: int = 1) -> "LatticeBox":
        return LatticeBox(tuple(a - k for a in self.lower), tuple(b + k for b in self.upper))

    def points(self):
        return product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    def is_empty(self) -> bool:
        return any(a > b for a, b in zip(self.lower, self.upper))


def _as_box(box, r: int) -> LatticeBox:
    if isinstance(box, LatticeBox):
        return box
    if isinstance(box, int):
        return LatticeBox.cube(r, box)
    lo, hi = box
    return LatticeBox(tuple(lo), tuple(hi))


def dual_monoid_points(T: ToricModel, box) -> list[tuple]:
    """Points of σ^∨ ∩ M inside the box, sorted."""
    box = _as_box(box, T.r)
    return [u for u in box.points() if T.in_M(u) and T.in_dual_cone(u)]


def toric_valuation(T: ToricModel, alpha: Sequence, element: Mapping | Iterable):
    """v_α(Σ c_u χ^u) = min over the support of Σ_i α_i ⟨u, e_i⟩; ``math.inf`` for 0.

    ``element`` is a mapping u -> coefficient or an iterable of exponents.
    """
    alpha = tuple(Fraction(a) for a in alpha)
    if len(alpha) != T.r or any(a < 0 for a in alpha):
        raise ValueError("alpha needs r non-negative entries")
    if isinstance(element, Mapping):
        support = [tuple(u) for u, c in element.items() if c]
    else:
        support = [tuple(u) for u in element]
    best = math.inf
    for u in support:
        if not (T.in_M(u) and T.in_dual_cone(u)):
            raise ValueError(f"exponent {u} is outside the dual monoid")
        best = min(best, _dot(alpha, T.pairings(u)))
    return best


@dataclass(frozen=True)
class CartierResult:
    """``u`` solves ⟨u, e_i⟩ = c_i over Q; ``order`` is the least k >= 1 with k·u ∈ M."""

    coefficients: tuple
    u: tuple
    order: int

    @property
    def cartier(self) -> bool:
        return self.order == 1

    def __bool__(self):
        return self.cartier


def is_cartier(T: ToricModel, L: Sequence[int]) -> CartierResult:
    c = tuple(int(x) for x in L)
    if len(c) != T.r:
        raise ValueError("divisor needs one coefficient per ray")
    u = tuple(_solve(T.rays, c))
    # k·u ∈ M iff k·⟨u, b⟩ ∈ Z for each N-basis vector b
    order = 1
    for b in T.n_basis:
        order = lcm(order, Fraction(_dot(u, b)).denominator)
    return CartierResult(c, u, order)


def cartier_index(T: ToricModel, L: Sequence[int]) -> int:
    """Smallest n >= 1 with nL Cartier, found by search up to the lattice index."""
    for n in range(1, T.lattice_index() + 1):
        if is_cartier(T, [n * x for x in L]).cartier:
            return n
    raise AssertionError("no Cartier multiple below the lattice index")


def divisor_sections(T: ToricModel, L: Sequence[int], box) -> list[tuple]:
    """Sections of L in the box as (u, tags) with tags_i = ⟨u, e_i⟩ + c_i >= 0."""
    box = _as_box(box, T.r)
    out = []
    for u in box.points():
        if not T.in_M(u):
            continue
        tags = tuple(p + c for p, c in zip(T.pairings(u), L))
        if all(t >= 0 for t in tags):
            out.append((u, tags))
    return out


@dataclass
class ToricCheck:
    name: str
    params: dict
    checked: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def check_noncartier_sum(T: ToricModel, L: Sequence[int], box) -> ToricCheck:
    """Every section of a non-Cartier L is a section of some L - D_i (some tag >= 1)."""
    res = is_cartier(T, L)
    if res.cartier:
        raise ValueError(f"divisor {list(L)} is Cartier (u = {list(res.u)}); the check needs a non-Cartier one")
    box = _as_box(box, T.r)
    secs = divisor_sections(T, L, box)
    bad = [u for u, tags in secs if not any(t >= 1 for t in tags)]
    return ToricCheck("noncartier_sum", {"L": list(L), "box": [list(box.lower), list(box.upper)]},
                      len(secs), bad)


def check_valuative_ideal(T: ToricModel, L: Sequence[int], alpha: Sequence, lam, box) -> ToricCheck:
    """Two-sided check of F^λ_{v_α}(O(L)) = Σ_{⟨α,m⟩ >= λ} O(L - Σ m_i D_i) on box sections.

    A section u has value Σ α_i tags_i.  It lies on the right side iff some
    m ∈ N^r with m <= tags has ⟨α, m⟩ >= λ; all such m are enumerated.
    """
    alpha = tuple(Fraction(a) for a in alpha)
    lam = Fraction(lam)
    if len(alpha) != T.r or not all(a > 0 for a in alpha):
        raise ValueError("alpha needs r strictly positive entries")
    box = _as_box(box, T.r)
    secs = divisor_sections(T, L, box)
    bad = []
    for u, tags in secs:
        value = _dot(alpha, tags)
        witness = next(
            (m for m in product(*(range(t + 1) for t in tags)) if _dot(alpha, m) >= lam),
            None,
        )
        if (value >= lam) != (witness is not None):
            bad.append({"u": u, "value": value, "witness": witness})
    params = {"L": list(L), "alpha": list(alpha), "lambda": lam,
              "box": [list(box.lower), list(box.upper)]}
    return ToricCheck("valuative_ideal", params, len(secs), bad)


QUADRIC_CONE = ((1, 0), (1, 2))
STANDARD_CONE = ((1, 0), (0, 1))

__all__ = [
    "ToricModel",
    "LatticeBox",
    "CartierResult",
    "ToricCheck",
    "dual_monoid_points",
    "toric_valuation",
    "is_cartier",
    "cartier_index",
    "divisor_sections",
    "check_noncartier_sum",
    "check_valuative_ideal",
    "QUADRIC_CONE",
    "STANDARD_CONE",
]
