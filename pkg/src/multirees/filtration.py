"""Principal image filtrations on a graded quotient ring and their intersections.

For cutters g_1..g_r of R = P/I the i-th filtration is
F_i^m = ((g_i^max(m,0)) + I)/I, and the multi-index pieces are
J(m) = F_1^{m_1} ∩ ... ∩ F_r^{m_r}.
"""

from __future__ import annotations

import random
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .gradedla import DegreeSlice, degree_slice, full_slice, intersect_slices, zero_slice
from .linalg import Subspace
from .polycore import Polynomial, WeightVector
from .quotient import IdealDescriptor, QuotientRing

__all__ = [
    "QuotientRing",
    "FiltrationFamily",
    "OrderResult",
    "ZeroElementError",
    "truncate",
    "filtration_piece",
    "multi_piece",
    "ord_alpha",
    "random_homogeneous",
    "MultiplicativityCase",
    "multiplicativity_sample",
]


class ZeroElementError(ValueError):
    """The order of the zero element is +infinity and is not computed."""


def truncate(m: Iterable[int]) -> tuple[int, ...]:
    """Effective multi-index: negative entries act as 0."""
    return tuple(max(int(x), 0) for x in m)


def _multiplication_injective(quotient: QuotientRing, g: Polynomial, n: int) -> bool:
    d = g.degree()
    rows = [quotient.vector(g.mul_monomial(s), n + d) for s in quotient.standard_monomials(n)]
    return Subspace.span(quotient.dim(n + d), rows).dim == quotient.dim(n)


class FiltrationFamily:
    """r principal filtrations on a graded quotient ring.

    Cutters must be homogeneous of positive degree and nonzero in the ring
    (unless the ring itself is zero).
    A cutter that is a zero divisor up to degree ``zero_divisor_check_degree``
    triggers a warning: the pieces are still well defined ideals, but they no
    longer read as vanishing orders along a prime divisor.
    """

    def __init__(self, quotient: QuotientRing, cutters: Sequence, *,
                 zero_divisor_check_degree: int | None = None):
        ring = quotient.ring
        gens = []
        for g in cutters:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("cutter from a different ring")
            if not g.is_homogeneous() or g.degree() <= 0:
                raise ValueError(f"cutter {g} must be homogeneous of positive degree")
            # the zero ring is admitted as a degenerate case: every window is empty
            if quotient.is_zero(g) and not quotient.is_zero_ring():
                raise ValueError(f"cutter {g} vanishes in the quotient ring")
            gens.append(g)
        if not gens:
            raise ValueError("a filtration family needs at least one cutter")
        self.quotient = quotient
        self.cutters = tuple(gens)
        self.degrees = tuple(g.degree() for g in gens)
        self._lock = threading.Lock()
        self._pieces: dict = {}
        self._powers: dict = {}
        bound = zero_divisor_check_degree
        if bound is None:
            rel = [h.degree() for h in quotient.relations.generators]
            bound = max(rel, default=0) + 1
        self.zero_divisors = tuple(
            i for i, g in enumerate(gens)
            if not all(_multiplication_injective(quotient, g, n) for n in range(bound + 1))
        )
        for i in self.zero_divisors:
            warnings.warn(
                f"cutter {gens[i]} is a zero divisor modulo the relations; "
                "its filtration is not a divisorial one",
                stacklevel=2,
            )

    @property
    def r(self) -> int:
        return len(self.cutters)

    @property
    def ring(self):
        return self.quotient.ring

    def __repr__(self):
        return f"FiltrationFamily({self.quotient}, cutters={[str(g) for g in self.cutters]})"

    def power(self, i: int, m: int) -> Polynomial:
        key = (i, m)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.cutters[i] ** m
            with self._lock:
                hit = self._powers.setdefault(key, hit)
        return hit

    def vanishes(self, m: Sequence[int], n: int) -> bool:
        """True when J(m)_n = 0 for degree reasons alone (g_i^{m_i} has degree > n)."""
        return any(mi * d > n for mi, d in zip(truncate(m), self.degrees))

    def cutoff(self, n: int) -> tuple[int, ...]:
        """Largest useful index per coordinate at degree n."""
        return tuple(n // d for d in self.degrees)


def filtration_piece(F: FiltrationFamily, i: int, m: int) -> IdealDescriptor:
    """((g_i^m) + I)/I for m > 0; the whole ring for m <= 0.  ``i`` is 1-based."""
    if not 1 <= i <= F.r:
        raise IndexError(f"filtration index {i} out of range 1..{F.r}")
    if m <= 0:
        return F.quotient.whole()
    return F.quotient.ideal([F.power(i - 1, m)])


def multi_piece(F: FiltrationFamily, m: Sequence[int], n: int) -> DegreeSlice:
    """Degree-n slice of J(m) = ∩_i F_i^{m_i}, cached per (m, n)."""
    m = truncate(m)
    if len(m) != F.r:
        raise ValueError(f"multi-index has length {len(m)}, expected {F.r}")
    key = (m, n)
    hit = F._pieces.get(key)
    if hit is not None:
        return hit
    if F.vanishes(m, n):
        out = zero_slice(F.quotient, n)
    else:
        parts = [
            degree_slice(filtration_piece(F, i + 1, mi), n)
            for i, mi in enumerate(m) if mi > 0
        ]
        out = intersect_slices(parts) if parts else full_slice(F.quotient, n)
    with F._lock:
        return F._pieces.setdefault(key, out)


@dataclass(frozen=True)
class OrderResult:
    """max <alpha, m> over the window with f in J(m); ``at`` lists the maximisers."""

    value: Fraction
    at: tuple
    boundary: bool

    @property
    def exact(self) -> bool:
        return not self.boundary


def ord_alpha(F: FiltrationFamily, f: Polynomial, alpha, window: Sequence[int]) -> OrderResult:
    """Order of homogeneous ``f`` for the weight ``alpha`` over the box [0, window].

    ``boundary`` is set when some maximiser sits on an upper face of the box
    that lies below the degree cutoff, in which case ``value`` is only a lower
    bound for the order.
    """
    if not isinstance(alpha, WeightVector):
        alpha = WeightVector(alpha)
    if len(alpha) != F.r:
        raise ValueError("alpha must have one entry per cutter")
    if not alpha.is_positive():
        raise ValueError("alpha must have strictly positive entries")
    if len(window) != F.r:
        raise ValueError("window must have one bound per cutter")
    if not f.is_homogeneous():
        raise ValueError("ord_alpha needs a homogeneous element")
    q = F.quotient
    f = q.normal_form(f)
    if f.is_zero():
        raise ZeroElementError("the zero element has order +infinity")
    n = f.degree()
    vec = q.vector(f, n)
    best = None
    argmax: list = []
    cut = F.cutoff(n)
    for m in product(*(range(min(w, c) + 1) for w, c in zip(window, cut))):
        if not multi_piece(F, m, n).basis.contains(vec):
            continue
        val = alpha.of(m)
        if best is None or val > best:
            best, argmax = val, [m]
        elif val == best:
            argmax.append(m)
    boundary = any(
        m[i] == window[i] and window[i] < cut[i] for m in argmax for i in range(F.r)
    )
    return OrderResult(best, tuple(argmax), boundary)


def random_homogeneous(F: FiltrationFamily, n: int, m: Sequence[int], rng,
                       coeff_bound: int = 3) -> Polynomial:
    """A nonzero element of J(m)_n: random integer combination of its basis rows."""
    piece = multi_piece(F, m, n)
    if not piece.dim:
        raise ValueError(f"J{tuple(m)} vanishes in degree {n}")
    q = F.quotient
    while True:
        acc: dict = {}
        for row in piece.basis.rows:
            c = rng.randint(-coeff_bound, coeff_bound)
            for k, x in row.items():
                acc[k] = acc.get(k, 0) + c * x
        acc = {k: x for k, x in acc.items() if x}
        if acc:
            return q.element(acc, n)


@dataclass
class MultiplicativityCase:
    f: Polynomial
    g: Polynomial
    ord_f: OrderResult
    ord_g: OrderResult
    ord_fg: OrderResult

    @property
    def ok(self) -> bool:
        clean = not (self.ord_f.boundary or self.ord_g.boundary or self.ord_fg.boundary)
        return clean and self.ord_fg.value == self.ord_f.value + self.ord_g.value


def multiplicativity_sample(F: FiltrationFamily, alpha, samples: int, max_degree: int,
                            seed: int = 0) -> list[MultiplicativityCase]:
    """Compare ord(fg) with ord(f) + ord(g) on seeded random homogeneous pairs.

    Each element is drawn from a random nonzero piece J(m)_n with
    1 <= n <= max_degree, so the orders spread over several levels.  The
    window for each order computation is the full degree cutoff, so no
    boundary flag can be raised by truncation.
    """
    rng = random.Random(seed)
    q = F.quotient
    cells = [
        (n, m)
        for n in range(1, max_degree + 1)
        for m in product(*(range(c + 1) for c in F.cutoff(n)))
        if multi_piece(F, m, n).dim
    ]
    if not cells:
        raise ValueError("no nonzero homogeneous elements in the requested degrees")
    out = []
    for _ in range(samples):
        f = random_homogeneous(F, *rng.choice(cells), rng)
        g = random_homogeneous(F, *rng.choice(cells), rng)
        fg = q.normal_form(f * g)
        if fg.is_zero():
            raise ZeroElementError(f"product of {f} and {g} vanishes in R")
        results = [ord_alpha(F, h, alpha, F.cutoff(h.degree())) for h in (f, g, fg)]
        out.append(MultiplicativityCase(f, g, *results))
    return out
