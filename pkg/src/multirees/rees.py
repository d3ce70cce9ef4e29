"""Windows of the extended Rees algebra, its flatness certificate and central fiber.

Everything here is windowed: degrees n <= N and multi-indices in the box
[0, W_1] x ... x [0, W_r].  Cells just outside the box that a computation
needs (J(m + e_i) on the upper faces, products landing beyond W) are built on
demand from the same family; nothing beyond degree N is ever claimed.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from .cone import RationalCone
from .filtration import FiltrationFamily, multi_piece, truncate
from .gradedla import (
    DegreeSlice,
    complex_from_subspaces,
    homology_dims,
    sum_slices,
)
from .groebner import BudgetExceeded
from .linalg import Subspace
from .polycore import Polynomial, WeightVector


class OutOfWindow(ValueError):
    """The requested degree lies beyond the window's degree bound."""


def _box(upper: Sequence[int]):
    return product(*(range(u + 1) for u in upper))


def _unit(r: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(r))


def _add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class ReesWindow:
    """Table (n, m) -> J(m)_n for n <= N and m in the box [0, W]."""

    def __init__(self, family: FiltrationFamily, N: int, W: Sequence[int],
                 max_cells: int | None = None):
        W = tuple(int(w) for w in W)
        if N < 0:
            raise ValueError("degree bound must be non-negative")
        if len(W) != family.r:
            raise ValueError(f"window needs {family.r} bounds")
        if any(w < 0 for w in W):
            raise ValueError("window bounds must be non-negative")
        self.family = family
        self.N = N
        self.W = W
        self.max_cells = max_cells
        self.table: dict = {}
        self._pieces: dict = {}
        self._lock = threading.Lock()

    @property
    def r(self) -> int:
        return self.family.r

    @property
    def quotient(self):
        return self.family.quotient

    def indices(self):
        return list(_box(self.W))

    def params(self) -> dict:
        return {"N": self.N, "W": list(self.W)}

    def J(self, n: int, m: Sequence[int]) -> DegreeSlice:
        m = truncate(m)
        hit = self.table.get((n, m))
        if hit is not None:
            return hit
        return multi_piece(self.family, m, n)

    def fill(self) -> "ReesWindow":
        cells = (self.N + 1) * len(self.indices())
        if self.max_cells is not None and cells > self.max_cells:
            raise BudgetExceeded(f"window has {cells} cells, budget is {self.max_cells}")
        for n in range(self.N + 1):
            for m in self.indices():
                self.table[(n, m)] = multi_piece(self.family, m, n)
        return self

    def dims(self) -> dict:
        return {k: s.dim for k, s in sorted(self.table.items())}

    def t_action_holds(self) -> bool:
        """J(m) ⊆ J(m - e_i) in every filled cell (the t_i-action)."""
        for (n, m), s in self.table.items():
            for i in range(self.r):
                if m[i] == 0:
                    continue
                lower = self.J(n, _add(m, tuple(-x for x in _unit(self.r, i))))
                if not lower.basis.contains_space(s.basis):
                    return False
        return True

    # central fiber pieces -----------------------------------------------------

    def piece(self, n: int, m: Sequence[int]) -> "CentralFiberPiece":
        if n > self.N:
            raise OutOfWindow(f"degree {n} exceeds the window bound N={self.N}")
        m = truncate(m)
        key = (n, m)
        hit = self._pieces.get(key)
        if hit is not None:
            return hit
        top = self.J(n, m)
        higher = [self.J(n, _add(m, _unit(self.r, i))) for i in range(self.r)]
        denom = sum_slices(higher)
        reps = []
        if top.dim > denom.dim:
            builder = Subspace.span(top.ambient_dim, (denom.basis.residue(row) for row in top.basis.rows))
            reps = [self.quotient.element(row, n) for row in builder.rows]
        out = CentralFiberPiece(n, m, tuple(reps), top, denom)
        with self._lock:
            return self._pieces.setdefault(key, out)


def build_window(F: FiltrationFamily, N: int, W: Sequence[int], *,
                 max_cells: int | None = None) -> ReesWindow:
    """Fill the (n, m) -> J(m)_n table; raises BudgetExceeded past ``max_cells``."""
    return ReesWindow(F, N, W, max_cells).fill()


# --- flatness ------------------------------------------------------------------


@dataclass
class FlatnessReport:
    params: dict
    cells: list  # (subset, m, n, homology dims, d∘d ok)
    verdict: str
    witness: dict | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-on-window"

    def max_positive_homology(self) -> int:
        return max((max(h[1:], default=0) for *_, h, _ in self.cells), default=0)


def _cell(args):
    subset, label, n, M, subs = args
    C = complex_from_subspaces(M, subs, n)
    return (subset, label, n, homology_dims(C), C.is_complex())


def _aggregate(params: dict, results: list) -> FlatnessReport:
    results.sort(key=lambda c: (len(c[0]), c[0], c[1], c[2]))
    witness = None
    for subset, label, n, h, ok in results:
        if not ok:
            raise AssertionError(f"d∘d != 0 at subset {subset}, index {label}, degree {n}")
        for p in range(1, len(h)):
            if h[p]:
                witness = {"subset": list(subset), "m": label, "n": n, "p": p, "dim": h[p]}
                break
        if witness:
            break
    verdict = "violation" if witness else "certified-on-window"
    return FlatnessReport(params, results, verdict, witness)


def check_flatness(window: ReesWindow, threads: int = 1) -> FlatnessReport:
    """Positive homology of C(J(m); (J(m + e_i))_{i in I}) for all I, m, n in the window.

    Subsets use 1-based cutter indices.  Cells are independent; with
    ``threads > 1`` they are evaluated concurrently and sorted afterwards.
    """
    r = window.r
    jobs = []
    for k in range(r + 1):
        for I in combinations(range(r), k):
            for m in window.indices():
                for n in range(window.N + 1):
                    M = window.J(n, m)
                    subs = [window.J(n, _add(m, _unit(r, i))) for i in I]
                    jobs.append((tuple(i + 1 for i in I), list(m), n, M, subs))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_cell, jobs))
    else:
        results = [_cell(j) for j in jobs]
    params = window.params() | {"r": r, "subsets": 2 ** r}
    return _aggregate(params, results)


def check_flatness_table(table: Sequence[dict]) -> FlatnessReport:
    """Testing seam: run the homology check on raw subspace data.

    Each entry has ``M`` and ``subs`` (Subspaces, or lists of row vectors with
    a shared column count ``ncols``) and optional ``label``/``n``/``subset``.
    """
    results = []
    for k, cell in enumerate(table):
        M, subs = cell["M"], cell["subs"]
        if not isinstance(M, Subspace):
            ncols = cell["ncols"]
            M = Subspace.span(ncols, [dict(enumerate(r)) for r in M])
            subs = [Subspace.span(ncols, [dict(enumerate(r)) for r in s]) for s in subs]
        subset = tuple(cell.get("subset", range(1, len(subs) + 1)))
        results.append(_cell((subset, cell.get("label", [k]), cell.get("n", 0), M, subs)))
    return _aggregate({"cells": len(table)}, results)


# --- central fiber ------------------------------------------------------------------


@dataclass(frozen=True)
class CentralFiberPiece:
    """J(m)_n / Σ_i J(m + e_i)_n with lifted representatives in normal form."""

    n: int
    m: tuple
    representatives: tuple
    top: DegreeSlice = field(repr=False)
    denominator: DegreeSlice = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def residue(self, f: Polynomial) -> dict:
        """Canonical residue of ``f`` (an element of J(m)_n) modulo the denominator."""
        vec = self.top.quotient.vector(self.top.quotient.normal_form(f), self.n) if f else {}
        if not self.top.basis.contains(vec):
            raise ValueError(f"{f} does not lie in J{self.m} at degree {self.n}")
        return self.denominator.basis.residue(vec)

    def elements(self) -> list["FiberElement"]:
        return [FiberElement(self.n, self.m, f) for f in self.representatives]


@dataclass(frozen=True)
class FiberElement:
    """Class of ``lift`` in the central-fiber piece (n, m)."""

    n: int
    m: tuple
    lift: Polynomial

    def __str__(self):
        return f"[{self.lift}]_(n={self.n}, m={list(self.m)})"


def central_fiber(window: ReesWindow) -> dict:
    """Every piece (n, m) of the window's central fiber."""
    return {(n, m): window.piece(n, m) for n in range(window.N + 1) for m in window.indices()}


def fiber_totals(pieces: dict) -> dict[int, int]:
    totals: dict[int, int] = {}
    for (n, _), p in sorted(pieces.items()):
        totals[n] = totals.get(n, 0) + p.dim
    return totals


def fiber_multiply(window: ReesWindow, a: FiberElement, b: FiberElement) -> FiberElement:
    """Product of two central-fiber classes, reduced in piece (n+n', m+m')."""
    n = a.n + b.n
    m = _add(a.m, b.m)
    if n > window.N:
        raise OutOfWindow(f"product degree {n} exceeds N={window.N}")
    target = window.piece(n, m)
    prod = window.quotient.normal_form(a.lift * b.lift)
    res = target.residue(prod)
    return FiberElement(n, m, window.quotient.element(res, n))


def is_zero_class(x: FiberElement) -> bool:
    return x.lift.is_zero()


@dataclass
class DomainResult:
    passed: bool
    degree: int
    basis_size: int
    pairs_checked: int
    witness: tuple | None = None


def domain_test(window: ReesWindow, d: int) -> DomainResult:
    """Check that products of nonzero fiber basis elements of degree <= d are nonzero.

    Needs N >= 2d.  Returns the first zero product found, in the order of
    (degree, multi-index, representative index).
    """
    if 2 * d > window.N:
        raise OutOfWindow(f"domain test at d={d} needs N >= {2 * d}, window has N={window.N}")
    basis: list[FiberElement] = []
    for n in range(d + 1):
        upper = tuple(max(w, c) for w, c in zip(window.W, window.family.cutoff(n)))
        for m in _box(upper):
            basis.extend(window.piece(n, m).elements())
    checked = 0
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            checked += 1
            prod = fiber_multiply(window, basis[i], basis[j])
            if is_zero_class(prod):
                return DomainResult(False, d, len(basis), checked, (basis[i], basis[j]))
    return DomainResult(True, d, len(basis), checked)


# --- graded bookkeeping ----------------------------------------------------------------------


@dataclass
class BookkeepingReport:
    alpha: tuple
    levels: list  # (n, lambda, direct dim, sum of fiber dims)
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for n, _, direct, _ in self.levels:
            out[n] = out.get(n, 0) + direct
        return out


def _effective_box(window: ReesWindow, n: int):
    upper = tuple(max(w, c) for w, c in zip(window.W, window.family.cutoff(n)))
    return [m for m in _box(upper) if not window.family.vanishes(m, n)]


def _level_space(window: ReesWindow, n: int, alpha: WeightVector, lam, strict: bool) -> Subspace:
    ncols = window.quotient.dim(n)
    parts = [
        window.J(n, m).basis for m in _effective_box(window, n)
        if (alpha.of(m) > lam if strict else alpha.of(m) >= lam)
    ]
    if not parts:
        return Subspace.zero(ncols)
    return parts[0].sum(*parts[1:])


def verify_graded_bookkeeping(window: ReesWindow, alpha) -> BookkeepingReport:
    """Compare dim F_α^λ/F_α^{>λ} with the sum of fiber pieces on the level ⟨α, m⟩ = λ.

    F_α^λ at degree n is Σ J(m') over ⟨α, m'⟩ >= λ, computed directly from
    the table; multi-indices past the degree cutoff contribute nothing.
    """
    if not isinstance(alpha, WeightVector):
        alpha = WeightVector(alpha)
    if len(alpha) != window.r or not alpha.is_positive():
        raise ValueError("alpha must be strictly positive with one entry per cutter")
    levels = []
    mismatches = []
    for n in range(window.N + 1):
        box = set(_effective_box(window, n)) | set(window.indices())
        lams = sorted({alpha.of(m) for m in box})
        for lam in lams:
            upper = _level_space(window, n, alpha, lam, strict=False)
            lower = _level_space(window, n, alpha, lam, strict=True)
            direct = upper.dim - lower.dim
            fiber = sum(window.piece(n, m).dim for m in box if alpha.of(m) == lam)
            levels.append((n, lam, direct, fiber))
            if direct != fiber:
                mismatches.append({"n": n, "lambda": lam, "direct": direct, "fiber": fiber})
    return BookkeepingReport(tuple(alpha.weights), levels, mismatches)


def alpha_fiber_table(window: ReesWindow, alpha) -> dict:
    """Per-(n, m) dimension of the image of J(m)_n in F_α^λ/F_α^{>λ}, λ = ⟨α, m⟩.

    Computed from the α-filtration alone; for a flat window it reproduces the
    central-fiber table whatever α is.
    """
    if not isinstance(alpha, WeightVector):
        alpha = WeightVector(alpha)
    out = {}
    for n in range(window.N + 1):
        cache: dict = {}
        for m in window.indices():
            lam = alpha.of(m)
            if lam not in cache:
                cache[lam] = _level_space(window, n, alpha, lam, strict=True)
            lower = cache[lam]
            out[(n, m)] = lower.sum(window.J(n, m).basis).dim - lower.dim
    return out


# --- support cone ---------------------------------------------------------------------------


@dataclass
class WeightConeSample:
    support: list
    rays: list
    saturated: bool
    holes: list

    @property
    def empty(self) -> bool:
        return not self.support


def weight_cone_sample(window: ReesWindow, pieces: dict | None = None) -> WeightConeSample:
    """Support {(n, m) : piece nonzero} in the window, its extreme rays and saturation."""
    if pieces is None:
        pieces = central_fiber(window)
    support = sorted((n,) + tuple(m) for (n, m), p in pieces.items() if p.dim > 0)
    if not support:
        return WeightConeSample([], [], True, [])
    cone = RationalCone(support)
    present = set(support)
    holes = [
        (n,) + tuple(m)
        for n in range(window.N + 1) for m in window.indices()
        if (n,) + tuple(m) not in present and cone.contains((n,) + tuple(m))
    ]
    return WeightConeSample(support, sorted(cone.rays), not holes, holes)


def support_scan(window: ReesWindow) -> list:
    """Brute-force support: dim J(m) - dim(Σ_i J(m + e_i)) > 0, by direct dimension count."""
    out = []
    r = window.r
    for n in range(window.N + 1):
        for m in window.indices():
            top = window.J(n, m).basis
            higher = [window.J(n, _add(m, _unit(r, i))).basis for i in range(r)]
            if top.dim > higher[0].sum(*higher[1:]).dim:
                out.append((n,) + tuple(m))
    return out


__all__ = [
    "OutOfWindow",
    "ReesWindow",
    "build_window",
    "FlatnessReport",
    "check_flatness",
    "check_flatness_table",
    "CentralFiberPiece",
    "FiberElement",
    "central_fiber",
    "fiber_totals",
    "fiber_multiply",
    "is_zero_class",
    "DomainResult",
    "domain_test",
    "BookkeepingReport",
    "verify_graded_bookkeeping",
    "alpha_fiber_table",
    "WeightConeSample",
    "weight_cone_sample",
    "support_scan",
]
