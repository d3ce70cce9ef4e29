"""Exact sparse row reduction over Q.

Vectors are ``{column: value}`` dicts.  Subspaces are kept in reduced row
echelon form with primitive integer rows (content stripped after every
elimination step), so no fractions appear during elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Vector = dict  # dict[int, int | Fraction]


def to_integer_row(vec: Mapping[int, object]) -> dict:
    """Primitive integer multiple of ``vec`` (zero entries dropped)."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    row = {}
    for c, v in vec.items():
        if v:
            row[c] = int(v * den) if den != 1 else int(v)
    return _primitive(row)


def _primitive(row: dict) -> dict:
    if not row:
        return row
    g = gcd(*row.values())
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(v: dict, a: int, row: dict, b: int) -> dict:
    """Return ``a*v - b*row`` (sparse)."""
    if a != 1:
        out = {c: a * x for c, x in v.items()}
    else:
        out = dict(v)
    for c, x in row.items():
        y = out.get(c, 0) - b * x
        if y:
            out[c] = y
        else:
            out.pop(c, None)
    return out


class Subspace:
    """Row space of a rational matrix with ``ncols`` columns.

    ``rows`` are in reduced echelon form: each row owns one pivot column on
    which every other row vanishes.  ``pivot_rule`` selects the pivot of a
    new row: ``"first"`` (lowest column) or ``"last"`` (highest column).
    """

    __slots__ = ("ncols", "rows", "pivots", "pivot_rule", "_where")

    def __init__(self, ncols: int, rows: Sequence[dict] = (), pivots: Sequence[int] = (),
                 pivot_rule: str = "first"):
        self.ncols = ncols
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)
        self.pivot_rule = pivot_rule
        self._where = {p: i for i, p in enumerate(self.pivots)}

    @classmethod
    def span(cls, ncols: int, vectors: Iterable[Mapping], pivot_rule: str = "first") -> "Subspace":
        builder = _Echelon(ncols, pivot_rule)
        for v in vectors:
            builder.insert(to_integer_row(v))
        return builder.freeze()

    @classmethod
    def full(cls, ncols: int) -> "Subspace":
        return cls(ncols, [{c: 1} for c in range(ncols)], list(range(ncols)))

    @classmethod
    def zero(cls, ncols: int) -> "Subspace":
        return cls(ncols)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ncols={self.ncols})"

    def is_full(self) -> bool:
        return self.dim == self.ncols

    def reduce(self, vec: Mapping) -> dict:
        """A primitive integer multiple of ``vec`` minus its component in the space.

        The result is zero iff ``vec`` lies in the space.
        """
        v = to_integer_row(vec)
        return self._reduce_int(v)

    def _reduce_int(self, v: dict) -> dict:
        where = self._where
        hits = [c for c in v if c in where]
        for c in hits:
            a = v.get(c)
            if not a:
                continue
            row = self.rows[where[c]]
            p = row[c]
            g = gcd(a, p)
            v = _combine(v, p // g, row, a // g)
        return _primitive(v)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def __contains__(self, vec):
        return self.contains(vec)

    def coordinates(self, vec: Mapping) -> list[Fraction]:
        """Coefficients of ``vec`` in the echelon basis; raises if not in the space."""
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            coeffs.append(Fraction(vec.get(p, 0)) / row[p])
        residual = {c: Fraction(x) for c, x in vec.items() if x}
        for k, row in zip(coeffs, self.rows):
            if k:
                for c, x in row.items():
                    y = residual.get(c, 0) - k * x
                    if y:
                        residual[c] = y
                    else:
                        residual.pop(c, None)
        if residual:
            raise ValueError("vector is not in the subspace")
        return coeffs

    def residue(self, vec: Mapping) -> dict:
        """Exact remainder ``vec - Σ c_k row_k`` that vanishes on every pivot column."""
        out = {c: Fraction(x) for c, x in vec.items() if x}
        for row, p in zip(self.rows, self.pivots):
            a = out.get(p)
            if not a:
                continue
            k = a / row[p]
            for c, x in row.items():
                y = out.get(c, 0) - k * x
                if y:
                    out[c] = y
                else:
                    out.pop(c, None)
        return out

    def contains_space(self, other: "Subspace") -> bool:
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        if other.dim > self.dim:
            return False
        return all(not self._reduce_int(dict(r)) for r in other.rows)

    def equals(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_space(other)

    def sum(self, *others: "Subspace") -> "Subspace":
        base = max((self,) + others, key=lambda s: s.dim)
        builder = _Echelon.from_subspace(base)
        for s in (self,) + others:
            if s is base:
                continue
            if s.ncols != self.ncols:
                raise ValueError("column count mismatch")
            for r in s.rows:
                builder.insert(dict(r))
        return builder.freeze()

    def intersect(self, other: "Subspace") -> "Subspace":
        """Exact intersection of two row spaces."""
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ncols, pivot_rule=self.pivot_rule)
        if self.is_full():
            return other
        if other.is_full():
            return self
        small, big = (self, other) if self.dim <= other.dim else (other, self)
        n = self.ncols
        # [u_k reduced mod big | tag_k]; rows whose left part dies give the kernel
        builder = _Echelon(n + small.dim, "first")
        for k, u in enumerate(small.rows):
            where = big._where
            v = dict(u)
            scale = 1
            for c in [c for c in v if c in where]:
                a = v.get(c)
                if not a:
                    continue
                row = big.rows[where[c]]
                p = row[c]
                g = gcd(a, p)
                v = _combine(v, p // g, row, a // g)
                scale *= p // g
            v[n + k] = scale
            builder.insert(_primitive(v))
        found = []
        for row, piv in zip(builder.rows, builder.pivots):
            if piv < n:
                continue
            vec: dict = {}
            for c, t in row.items():
                for cc, x in small.rows[c - n].items():
                    y = vec.get(cc, 0) + t * x
                    if y:
                        vec[cc] = y
                    else:
                        vec.pop(cc, None)
            found.append(vec)
        return Subspace.span(n, found, self.pivot_rule)

    def dense(self) -> list[list[int]]:
        return [[r.get(c, 0) for c in range(self.ncols)] for r in self.rows]


class _Echelon:
    """Mutable reduced-echelon builder behind :class:`Subspace`."""

    def __init__(self, ncols: int, pivot_rule: str = "first"):
        if pivot_rule not in ("first", "last"):
            raise ValueError(f"unknown pivot rule {pivot_rule!r}")
        self.ncols = ncols
        self.pivot_rule = pivot_rule
        self.rows: list[dict] = []
        self.pivots: list[int] = []
        self.where: dict[int, int] = {}
        # column -> set of row indices with a nonzero there, for back-substitution
        self.occurs: dict[int, set] = {}

    @classmethod
    def from_subspace(cls, s: Subspace) -> "_Echelon":
        b = cls(s.ncols, s.pivot_rule)
        for r, p in zip(s.rows, s.pivots):
            i = len(b.rows)
            b.rows.append(dict(r))
            b.pivots.append(p)
            b.where[p] = i
            for c in r:
                b.occurs.setdefault(c, set()).add(i)
        return b

    def insert(self, v: dict) -> bool:
        where = self.where
        for c in [c for c in v if c in where]:
            a = v.get(c)
            if not a:
                continue
            row = self.rows[where[c]]
            p = row[c]
            g = gcd(a, p)
            v = _combine(v, p // g, row, a // g)
        if not v:
            return False
        v = _primitive(v)
        piv = min(v) if self.pivot_rule == "first" else max(v)
        if v[piv] < 0:
            v = {c: -x for c, x in v.items()}
        pv = v[piv]
        occurs = self.occurs
        for i in list(occurs.get(piv, ())):
            row = self.rows[i]
            a = row[piv]
            g = gcd(a, pv)
            new = _primitive(_combine(row, pv // g, v, a // g))
            for c in row:
                if c not in new:
                    occurs[c].discard(i)
            for c in new:
                occurs.setdefault(c, set()).add(i)
            self.rows[i] = new
        i = len(self.rows)
        self.rows.append(v)
        self.pivots.append(piv)
        where[piv] = i
        for c in v:
            occurs.setdefault(c, set()).add(i)
        return True

    def freeze(self) -> Subspace:
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return Subspace(
            self.ncols,
            [self.rows[i] for i in order],
            [self.pivots[i] for i in order],
            self.pivot_rule,
        )


def rank(rows: Iterable[Mapping], ncols: int, pivot_rule: str = "first") -> int:
    """Rank of a sparse matrix given by its rows."""
    return Subspace.span(ncols, rows, pivot_rule).dim


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by dense fraction-free (Bareiss) elimination.

    Independent of :class:`Subspace`; used as a cross-check.  Rational
    entries are cleared row by row before elimination.
    """
    m = [list(to_integer_row(dict(enumerate(r))).get(c, 0) for c in range(len(r)))
         for r in matrix if any(r)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            for j in range(c + 1, ncols):
                m[i][j] = (p * m[i][j] - a * m[r][j]) // prev
            m[i][c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def matmul(a: Sequence[Mapping], b: Sequence[Mapping]) -> list[dict]:
    """Sparse product of row-dict matrices ``a`` (n x k) and ``b`` (k x m)."""
    out = []
    for row in a:
        acc: dict = {}
        for k, x in row.items():
            for j, y in b[k].items():
                z = acc.get(j, 0) + x * y
                if z:
                    acc[j] = z
                else:
                    acc.pop(j, None)
        out.append(acc)
    return out


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
