"""Graded quotient rings P/I with standard-monomial coordinates, and ideal descriptors."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable

from .groebner import GroebnerBasis, Ideal, basis_cache, normal_form
from .polycore import GREVLEX, Polynomial, PolynomialRing, TermOrder


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class QuotientRing:
    """R = P/I for a homogeneous ideal I.

    Degree-n elements of R are written in the basis of standard monomials of
    degree n (monomials outside the leading-term ideal of I), ordered by
    descending graded-reverse-lex.
    """

    def __init__(self, ring: PolynomialRing, relations: Ideal | Iterable = (),
                 order: TermOrder = GREVLEX, max_steps: int | None = None):
        if not isinstance(relations, Ideal):
            relations = Ideal(ring, relations)
        if relations.ring != ring:
            raise ValueError("relations live in a different ring")
        if not relations.is_homogeneous():
            raise ValueError(
                f"relations must be homogeneous for the grading {list(ring.grading)}"
            )
        self.ring = ring
        self.relations = relations
        self.order = order
        kwargs = {} if max_steps is None else {"max_steps": max_steps}
        self.basis: GroebnerBasis = basis_cache.get(relations, order, **kwargs)
        self._lock = threading.Lock()
        self._std: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        self._nf: dict[tuple, dict] = {}

    def __repr__(self):
        if not self.relations.generators:
            return f"QuotientRing({self.ring})"
        return f"QuotientRing({self.ring} / {self.relations})"

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ring == other.ring
            and self.relations == other.relations
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.ring, self.relations, self.order))

    def is_zero_ring(self) -> bool:
        return self.basis.is_unit()

    def standard_monomials(self, n: int) -> tuple:
        hit = self._std.get(n)
        if hit is not None:
            return hit
        lead = self.basis.leading
        std = tuple(
            m for m in self.ring.monomials_of_degree(n)
            if not any(_divides(lm, m) for lm in lead)
        )
        with self._lock:
            self._std.setdefault(n, std)
            self._index.setdefault(n, {m: i for i, m in enumerate(std)})
        return self._std[n]

    def dim(self, n: int) -> int:
        return len(self.standard_monomials(n))

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.normal_form(f)

    def _monomial_vector(self, exps: tuple) -> dict:
        hit = self._nf.get(exps)
        if hit is not None:
            return hit
        n = self.ring.degree(exps)
        self.standard_monomials(n)
        index = self._index[n]
        if exps in index:
            vec = {index[exps]: Fraction(1)}
        else:
            nf = normal_form(self.ring.monomial(exps), self.basis)
            vec = {index[e]: c for e, c in nf.items()}
        with self._lock:
            return self._nf.setdefault(exps, vec)

    def vector(self, f: Polynomial, n: int | None = None) -> dict:
        """Coordinates of the class of homogeneous ``f`` in the degree-n basis."""
        if f.ring != self.ring:
            raise ValueError("element of a different ring")
        if n is None:
            n = f.degree()
        out: dict = {}
        deg = self.ring.degree
        for e, c in f.items():
            if deg(e) != n:
                raise ValueError(f"{f} is not homogeneous of degree {n}")
            for col, x in self._monomial_vector(e).items():
                y = out.get(col, 0) + c * x
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
        return out

    def element(self, vec: dict, n: int) -> Polynomial:
        """Polynomial in normal form with the given degree-n coordinates."""
        std = self.standard_monomials(n)
        return Polynomial(self.ring, {std[c]: Fraction(x) for c, x in vec.items()})

    def is_zero(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def ideal(self, generators: Iterable) -> "IdealDescriptor":
        return IdealDescriptor(self, generators)

    def whole(self) -> "IdealDescriptor":
        return IdealDescriptor(self, [self.ring.one()])


class IdealDescriptor:
    """The ideal ((generators) + I)/I of R = P/I; the whole ring when a unit is among them."""

    __slots__ = ("quotient", "generators", "_hash")

    def __init__(self, quotient: QuotientRing, generators: Iterable):
        ring = quotient.ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.quotient = quotient
        self.generators = tuple(gens)
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, IdealDescriptor)
            and self.quotient == other.quotient
            and set(self.generators) == set(other.generators)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.quotient, frozenset(self.generators)))
        return self._hash

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"IdealDescriptor(({gens}) in {self.quotient})"

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def lifted(self) -> Ideal:
        """The ideal (generators) + I of the polynomial ring."""
        return Ideal(self.quotient.ring, self.generators + self.quotient.relations.generators)


def as_descriptor(space, quotient: QuotientRing | None = None) -> IdealDescriptor:
    if isinstance(space, IdealDescriptor):
        return space
    if isinstance(space, QuotientRing):
        return space.whole()
    if isinstance(space, Ideal):
        return IdealDescriptor(quotient or QuotientRing(space.ring), space.generators)
    raise TypeError(f"not an ideal-or-quotient descriptor: {space!r}")


def polynomial_ring_quotient(ring: PolynomialRing) -> QuotientRing:
    return QuotientRing(ring, Ideal(ring, ()))


__all__ = ["QuotientRing", "IdealDescriptor", "as_descriptor", "polynomial_ring_quotient"]
