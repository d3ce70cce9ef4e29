"""Exact extreme rays and membership for cones generated by integer vectors."""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .linalg import Subspace, bareiss_det


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd(*v) if any(v) else 0
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _cross(vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer normal to k-1 vectors in Z^k (signed maximal minors)."""
    k = len(vectors[0])
    out = []
    for j in range(k):
        minor = [[row[c] for c in range(k) if c != j] for row in vectors]
        out.append((-1) ** j * bareiss_det(minor))
    return tuple(out)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


class RationalCone:
    """Cone generated by finitely many integer vectors, assumed pointed.

    Works inside the linear span of the generators: coordinates are projected
    onto the echelon pivot columns of the span, which is injective there.
    """

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = sorted({primitive(tuple(g)) for g in generators if any(g)})
        self.ambient_dim = len(gens[0]) if gens else 0
        self.generators = tuple(gens)
        if not gens:
            self.span = None
            self.dim = 0
            self.facets: tuple = ()
            self.rays: tuple = ()
            return
        self.span = Subspace.span(self.ambient_dim, [dict(enumerate(g)) for g in gens])
        self.dim = self.span.dim
        self._cols = self.span.pivots
        proj = [self._project(g) for g in gens]
        self.facets = tuple(self._facets(proj))
        self.rays = tuple(
            g for g, p in zip(gens, proj) if self._is_extreme(p)
        )

    def _project(self, v):
        return tuple(v[c] for c in self._cols)

    def _facets(self, proj):
        k = self.dim
        if k == 1:
            signs = {1 if p[0] > 0 else -1 for p in proj}
            if len(signs) > 1:
                raise ValueError("cone contains a line; extreme rays are undefined")
            s = signs.pop()
            return [(s,)]
        normals = set()
        for subset in combinations(proj, k - 1):
            nrm = _cross(subset)
            if not any(nrm):
                continue
            vals = [_dot(nrm, p) for p in proj]
            if all(v >= 0 for v in vals):
                normals.add(primitive(nrm))
            elif all(v <= 0 for v in vals):
                normals.add(primitive(tuple(-x for x in nrm)))
        if not normals:
            raise ValueError("cone contains a line; extreme rays are undefined")
        return sorted(normals)

    def _is_extreme(self, p) -> bool:
        k = self.dim
        if k == 1:
            return True
        tight = [dict(enumerate(nrm)) for nrm in self.facets if _dot(nrm, p) == 0]
        return Subspace.span(k, tight).dim == k - 1

    def contains(self, point: Sequence[int]) -> bool:
        if not any(point):
            return True
        if self.span is None:
            return False
        if not self.span.contains(dict(enumerate(point))):
            return False
        p = self._project(point)
        return all(_dot(nrm, p) >= 0 for nrm in self.facets)


def extreme_rays(points: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Primitive extreme rays of the cone generated by ``points``, sorted."""
    return sorted(RationalCone(points).rays)
