"""Per-degree linear algebra on homogeneous ideals, and intersection complexes.

A :class:`DegreeSlice` is the degree-n piece of an ideal of R = P/I written
in the standard-monomial coordinates of R_n.  :func:`build_intersection_complex`
assembles the chain complex

    0 -> M_1 ∩ ... ∩ M_r -> ... -> ⊕_{i<j} M_i ∩ M_j -> ⊕_i M_i -> M -> 0

with M in position 0; the component dropping the k-th index (1-based) of a
subset is (-1)^(k+1) times the inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .linalg import Subspace, matmul, rank
from .polycore import Polynomial
from .quotient import IdealDescriptor, QuotientRing, as_descriptor


class ContainmentError(ValueError):
    """A sub-object handed to the complex builder is not inside the ambient slice."""


@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    ambient: tuple  # standard monomials of R_n, in column order
    basis: Subspace
    quotient: QuotientRing | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient)

    def __repr__(self):
        return f"DegreeSlice(degree={self.degree}, dim={self.dim}/{self.ambient_dim})"

    def polynomials(self) -> list[Polynomial]:
        """The basis rows as elements of R (normal forms)."""
        if self.quotient is None:
            raise ValueError("slice is not attached to a ring")
        return [self.quotient.element(r, self.degree) for r in self.basis.rows]

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return self.basis.contains(self.quotient.vector(f, self.degree))

    def contains_slice(self, other: "DegreeSlice") -> bool:
        _check_compatible([self, other])
        return self.basis.contains_space(other.basis)

    def with_basis(self, basis: Subspace) -> "DegreeSlice":
        return DegreeSlice(self.degree, self.ambient, basis, self.quotient)


def _check_compatible(slices: Sequence[DegreeSlice]):
    first = slices[0]
    for s in slices[1:]:
        if s.degree != first.degree:
            raise ValueError(f"degree mismatch: {s.degree} vs {first.degree}")
        if s.ambient != first.ambient:
            raise ValueError("ambient monomial ordering mismatch")


def full_slice(quotient: QuotientRing, n: int) -> DegreeSlice:
    std = quotient.standard_monomials(n)
    return DegreeSlice(n, std, Subspace.full(len(std)), quotient)


def zero_slice(quotient: QuotientRing, n: int) -> DegreeSlice:
    std = quotient.standard_monomials(n)
    return DegreeSlice(n, std, Subspace.zero(len(std)), quotient)


def degree_slice(space, n: int) -> DegreeSlice:
    """Exact basis of the degree-``n`` piece of an ideal of P or of R = P/I.

    Each generator of degree d is multiplied by every monomial of degree
    n - d; the products are written in normal-form coordinates and row reduced.
    """
    desc: IdealDescriptor = as_descriptor(space)
    quotient = desc.quotient
    std = quotient.standard_monomials(n)
    if desc.is_unit:
        return full_slice(quotient, n)
    ring = quotient.ring
    rows = []
    for g in desc.generators:
        d = g.degree()
        if d > n:
            continue
        gterms = list(g.items())
        for t in ring.monomials_of_degree(n - d):
            acc: dict = {}
            for e, c in gterms:
                m = tuple(a + b for a, b in zip(e, t))
                for col, x in quotient._monomial_vector(m).items():
                    y = acc.get(col, 0) + c * x
                    if y:
                        acc[col] = y
                    else:
                        acc.pop(col, None)
            if acc:
                rows.append(acc)
    return DegreeSlice(n, std, Subspace.span(len(std), rows), quotient)


def degree_slice_dim_groebner(space, n: int) -> int:
    """dim of the degree-``n`` piece via standard-monomial counting.

    dim ((J + I)/I)_n = #std(I)_n - #std(J + I)_n, with both counts read off
    Groebner bases; independent of :func:`degree_slice`.
    """
    desc = as_descriptor(space)
    quotient = desc.quotient
    if desc.is_unit:
        return quotient.dim(n)
    big = QuotientRing(quotient.ring, desc.lifted(), quotient.order)
    return quotient.dim(n) - big.dim(n)


def intersect_slices(slices: Sequence[DegreeSlice]) -> DegreeSlice:
    """Exact intersection of row spaces sharing degree and ambient coordinates."""
    if not slices:
        raise ValueError("need at least one slice")
    _check_compatible(slices)
    basis = slices[0].basis
    for s in slices[1:]:
        basis = basis.intersect(s.basis)
    return slices[0].with_basis(basis)


def sum_slices(slices: Sequence[DegreeSlice]) -> DegreeSlice:
    if not slices:
        raise ValueError("need at least one slice")
    _check_compatible(slices)
    return slices[0].with_basis(slices[0].basis.sum(*(s.basis for s in slices[1:])))


# --- intersection complexes -----------------------------------------------------


@dataclass
class GradedComplex:
    """Chain complex of finite-dimensional Q-vector spaces at a fixed degree.

    ``terms[p]`` lists ``(subset, subspace)`` pairs whose direct sum is the
    position-p term; ``differentials[p]`` is the matrix of d_p: C_p -> C_{p-1}
    as rows (one per basis vector of C_p) of coordinates in the basis of C_{p-1}.
    ``differentials[0]`` is the empty map out of position 0.
    """

    degree: int | None
    terms: list
    differentials: list

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term_dims(self) -> list[int]:
        return [sum(s.dim for _, s in t) for t in self.terms]

    def is_complex(self) -> bool:
        """d_{p-1} ∘ d_p = 0 for every p, checked on matrices."""
        for p in range(2, len(self.terms)):
            prod = matmul(self.differentials[p], self.differentials[p - 1])
            if any(prod_row for prod_row in prod):
                return False
        return True

    def ranks(self, pivot_rule: str = "first") -> list[int]:
        dims = self.term_dims()
        out = [0]
        for p in range(1, len(self.terms)):
            out.append(rank(self.differentials[p], dims[p - 1], pivot_rule))
        return out


def _subspace_of(x) -> Subspace:
    return x.basis if isinstance(x, DegreeSlice) else x


def complex_from_subspaces(M, subs: Sequence, degree: int | None = None,
                           check: bool = True) -> GradedComplex:
    """Intersection complex of ``M`` and sub-objects ``subs`` given as slices or subspaces.

    This is also the raw entry point for hand-built subspace tables.
    """
    Mb = _subspace_of(M)
    sub_bases = [_subspace_of(s) for s in subs]
    for i, s in enumerate(sub_bases):
        if s.ncols != Mb.ncols:
            raise ValueError("sub-object lives in a different ambient space")
        if check and not Mb.contains_space(s):
            raise ContainmentError(f"sub-object {i + 1} is not contained in M (degree {degree})")
    r = len(sub_bases)
    inter: dict[tuple, Subspace] = {(): Mb}
    for i, s in enumerate(sub_bases):
        inter[(i,)] = s
    terms = [[((), Mb)]]
    for p in range(1, r + 1):
        row = []
        for S in combinations(range(r), p):
            if S not in inter:
                inter[S] = inter[S[:-1]].intersect(inter[(S[-1],)])
            row.append((S, inter[S]))
        terms.append(row)

    differentials: list = [[]]
    for p in range(1, r + 1):
        # column offsets of each subset block in the target term
        offsets = {}
        off = 0
        for T, sp in terms[p - 1]:
            offsets[T] = off
            off += sp.dim
        mat = []
        for S, sp in terms[p]:
            faces = []
            for k in range(p):
                T = S[:k] + S[k + 1:]
                sign = 1 if k % 2 == 0 else -1
                faces.append((sign, offsets[T], inter[T]))
            for vec in sp.rows:
                row: dict = {}
                for sign, base, target in faces:
                    for j, c in enumerate(target.coordinates(vec)):
                        if c:
                            row[base + j] = sign * c
                mat.append(row)
        differentials.append(mat)
    return GradedComplex(degree, terms, differentials)


def build_intersection_complex(M, subs: Sequence, n: int) -> GradedComplex:
    """Intersection complex of descriptors (or slices) ``M`` ⊇ ``subs`` at degree ``n``."""
    def sl(x):
        return x if isinstance(x, DegreeSlice) else degree_slice(x, n)

    Ms = sl(M)
    sub_slices = [sl(s) for s in subs]
    if sub_slices:
        _check_compatible([Ms] + sub_slices)
    return complex_from_subspaces(Ms, sub_slices, n)


def homology_dims(C: GradedComplex, pivot_rule: str = "first") -> list[int]:
    """dim H_p for p = 0..r by rank-nullity."""
    dims = C.term_dims()
    ranks = C.ranks(pivot_rule) + [0]
    return [dims[p] - ranks[p] - ranks[p + 1] for p in range(len(dims))]


def euler_characteristic(values: Sequence[int]) -> int:
    return sum((-1) ** p * v for p, v in enumerate(values))


__all__ = [
    "ContainmentError",
    "DegreeSlice",
    "GradedComplex",
    "degree_slice",
    "degree_slice_dim_groebner",
    "intersect_slices",
    "sum_slices",
    "full_slice",
    "zero_slice",
    "complex_from_subspaces",
    "build_intersection_complex",
    "homology_dims",
    "euler_characteristic",
]
