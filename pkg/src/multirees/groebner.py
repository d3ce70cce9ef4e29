"""Buchberger's algorithm, normal forms, ideal membership and initial ideals."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .polycore import (
    GREVLEX,
    Polynomial,
    PolynomialRing,
    TermOrder,
    WeightVector,
    initial_form,
)


class BudgetExceeded(RuntimeError):
    """A configured resource budget ran out before the computation finished."""


class Ideal:
    """Ideal of a polynomial ring given by nonzero, deduplicated generators."""

    __slots__ = ("ring", "generators", "_hash")

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        gens: list[Polynomial] = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._hash = None

    def __eq__(self, other):
        # syntactic equality of generating sets; use ideal_membership for ideals
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and set(self.generators) == set(other.generators)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.generators)))
        return self._hash

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __len__(self):
        return len(self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)


class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by leading monomial, descending."""

    __slots__ = ("order", "elements", "source", "leading", "steps")

    def __init__(self, order: TermOrder, elements: Sequence[Polynomial], source: Ideal,
                 steps: int = 0):
        self.order = order
        self.elements = tuple(elements)
        self.source = source
        self.leading = tuple(g.leading_monomial(order) for g in self.elements)
        self.steps = steps

    @property
    def ring(self) -> PolynomialRing:
        return self.source.ring

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, order={self.order!r})"

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(f_terms: dict, basis: Sequence[tuple], key, full: bool = True) -> dict:
    """Remainder of ``f_terms`` on division by ``basis``.

    ``basis`` holds ``(leading_monomial, terms)`` pairs of monic polynomials.
    With ``full`` the remainder has no term divisible by any leading monomial;
    otherwise only the leading term is reduced (top reduction).
    """
    f = dict(f_terms)
    rem: dict = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, gterms in basis:
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                for e, gc in gterms.items():
                    m = tuple(a + b for a, b in zip(e, shift))
                    v = f.get(m, 0) - c * gc
                    if v:
                        f[m] = v
                    else:
                        f.pop(m, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: tuple, g: tuple) -> dict:
    flm, fterms = f
    glm, gterms = g
    lcm = _lcm(flm, glm)
    sf = tuple(a - b for a, b in zip(lcm, flm))
    sg = tuple(a - b for a, b in zip(lcm, glm))
    out: dict = {}
    for e, c in fterms.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in gterms.items():
        m = tuple(a + b for a, b in zip(e, sg))
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _monic(terms: dict, key) -> tuple:
    lm = max(terms, key=key)
    lc = terms[lm]
    if lc != 1:
        terms = {e: c / lc for e, c in terms.items()}
    return lm, terms


DEFAULT_MAX_STEPS = 200_000


def buchberger(ideal: Ideal, order: TermOrder = GREVLEX, *,
               max_steps: int | None = DEFAULT_MAX_STEPS) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Pairs are processed by the normal strategy: smallest lcm degree first,
    ties broken by the pair's index tuple.  Pairs with coprime leading
    monomials are skipped (Buchberger's first criterion).  Raises
    :class:`BudgetExceeded` once more than ``max_steps`` pairs were reduced.
    """
    ring = ideal.ring
    key = order.key
    deg = ring.degree
    basis: list[tuple] = []
    pairs: set[tuple[int, int]] = set()

    def add(terms: dict):
        basis.append(_monic(terms, key))
        idx = len(basis) - 1
        pairs.update((j, idx) for j in range(idx))

    for g in ideal.generators:
        r = _reduce(g._terms, basis, key)
        if r:
            add(r)

    steps = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (deg(_lcm(basis[p[0]][0], basis[p[1]][0])), p))
        pairs.discard((i, j))
        lmi, lmj = basis[i][0], basis[j][0]
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise BudgetExceeded(f"Groebner step budget of {max_steps} exceeded")
        r = _reduce(_spoly(basis[i], basis[j]), basis, key)
        if r:
            add(r)

    elements = _interreduce(basis, key)
    polys = [Polynomial._raw(ring, terms) for _, terms in elements]
    return GroebnerBasis(order, polys, ideal, steps)


def _interreduce(basis: list[tuple], key) -> list[tuple]:
    # minimalise: drop elements whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda b: key(b[0]))
    minimal: list[tuple] = []
    for b in basis:
        if not any(_divides(m[0], b[0]) for m in minimal):
            minimal.append(b)
    reduced = []
    for i, (lm, terms) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce(terms, others, key)
        reduced.append(_monic(r, key))
    reduced.sort(key=lambda b: key(b[0]), reverse=True)
    return reduced


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo ``G``."""
    if f.ring != G.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {G.ring}")
    basis = list(zip(G.leading, (g._terms for g in G.elements)))
    return Polynomial._raw(f.ring, _reduce(f._terms, basis, G.order.key))


def spoly_reductions_vanish(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero modulo ``G``."""
    basis = list(zip(G.leading, (g._terms for g in G.elements)))
    key = G.order.key
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _reduce(_spoly(basis[i], basis[j]), basis, key):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """No term of any element is divisible by another element's leading monomial."""
    for i, g in enumerate(G.elements):
        for e in g._terms:
            for j, lm in enumerate(G.leading):
                if j != i and _divides(lm, e):
                    return False
        if g.leading_coefficient(G.order) != 1:
            return False
    return True


class BasisCache:
    """Memo of Groebner bases keyed by (ideal, order); safe for concurrent lookups.

    Concurrent misses may compute the same basis twice; both results are equal
    and the first one stored wins.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._store: dict = {}

    def get(self, ideal: Ideal, order: TermOrder = GREVLEX, **kwargs) -> GroebnerBasis:
        k = (ideal, order)
        with self._lock:
            hit = self._store.get(k)
        if hit is not None:
            return hit
        G = buchberger(ideal, order, **kwargs)
        with self._lock:
            return self._store.setdefault(k, G)

    def __len__(self):
        return len(self._store)

    def clear(self):
        with self._lock:
            self._store.clear()


basis_cache = BasisCache()


def ideal_membership(f: Polynomial, ideal: Ideal, order: TermOrder = GREVLEX) -> bool:
    """True iff ``f`` lies in ``ideal``."""
    if f.ring != ideal.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {ideal.ring}")
    return normal_form(f, basis_cache.get(ideal, order)).is_zero()


def initial_ideal(ideal: Ideal, w: WeightVector | Sequence,
                  tiebreak: TermOrder = GREVLEX, **kwargs) -> Ideal:
    """Ideal of minimal-``w``-weight initial forms of a homogeneous ideal.

    Generated by the initial forms of the reduced Groebner basis under the
    ``w``-refined order (smallest weight leads), tie broken by ``tiebreak``.
    """
    if not isinstance(w, WeightVector):
        w = WeightVector(w)
    if len(w) != ideal.ring.nvars:
        raise ValueError("weight vector length does not match the ring")
    if not ideal.is_homogeneous():
        raise ValueError("initial_ideal requires a homogeneous ideal")
    order = TermOrder.weight_refined(w, tiebreak, grading=ideal.ring.grading)
    G = basis_cache.get(ideal, order, **kwargs)
    forms = [initial_form(g, w) for g in G.elements]
    return Ideal(ideal.ring, forms)


__all__ = [
    "BudgetExceeded",
    "Ideal",
    "GroebnerBasis",
    "BasisCache",
    "basis_cache",
    "buchberger",
    "normal_form",
    "ideal_membership",
    "initial_ideal",
    "spoly_reductions_vanish",
    "is_reduced",
]
