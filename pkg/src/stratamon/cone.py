"""Facet normals of rational polyhedral cones by the double description method."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import (
    IntVec,
    dot,
    gradlex_key,
    nullspace,
    primitive,
    row_echelon,
    solve_rational_system,
)
from .errors import InputError


@dataclass(frozen=True)
class ConeFacets:
    """H-description ``{x : e.x == 0 for e in equations, v.x >= 0 for v in normals}``.

    Normals lie in the linear span of the cone, are primitive, and point
    inward.  When the cone spans all of Q^dim, ``equations`` is empty.
    """

    dim: int
    rank: int
    normals: tuple
    equations: tuple

    def in_span(self, x: Sequence[int]) -> bool:
        return all(dot(e, x) == 0 for e in self.equations)

    def contains(self, x: Sequence) -> bool:
        return self.in_span(x) and all(dot(v, x) >= 0 for v in self.normals)

    def normals_containing(self, x: Sequence) -> list:
        return [v for v in self.normals if dot(v, x) == 0]


def _independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    chosen: list[int] = []
    rows: list = []
    for i, v in enumerate(vectors):
        trial = rows + [v]
        if len(row_echelon(trial)[1]) == len(trial):
            rows = trial
            chosen.append(i)
    return chosen


def _dual_rays(ineqs: list[IntVec], r: int) -> list[IntVec]:
    """Extreme rays of ``{w in Q^r : a.w >= 0 for a in ineqs}`` (pointed case)."""
    start = _independent_subset(ineqs)
    if len(start) != r:
        raise InputError("double description: inequalities do not span")
    A0 = [ineqs[i] for i in start]
    rays = []
    for k in range(r):
        # column k of A0^{-1}: A0 w = e_k
        cols = [tuple(A0[i][j] for i in range(r)) for j in range(r)]
        w = solve_rational_system(cols, tuple(int(i == k) for i in range(r)))
        rays.append(primitive(w))
    processed = list(start)
    for idx, a in enumerate(ineqs):
        if idx in start:
            continue
        vals = [dot(a, w) for w in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            processed.append(idx)
            continue
        zsets = [frozenset(i for i in processed if dot(ineqs[i], w) == 0) for w in rays]
        new = [rays[i] for i, s in enumerate(vals) if s >= 0]
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                if len(common) < r - 2:
                    continue
                if any(t != p and t != q and common <= zsets[t] for t in range(len(rays))):
                    continue
                w = tuple(vals[p] * b - vals[q] * c for b, c in zip(rays[q], rays[p]))
                new.append(primitive(w))
        processed.append(idx)
        seen = []
        for w in new:
            if w not in seen:
                seen.append(w)
        rays = seen
    return rays


def facets_of(vectors: Sequence[Sequence[int]], dim: int) -> ConeFacets:
    """Facet normals of ``cone(vectors)`` inside its linear span."""
    gens = []
    for v in vectors:
        v = tuple(v)
        if len(v) != dim:
            raise InputError(f"facets_of: dimension mismatch ({len(v)} != {dim})")
        if any(v) and v not in gens:
            gens.append(v)
    if not gens:
        eye = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
        return ConeFacets(dim, 0, (), eye)
    basis = [gens[i] for i in _independent_subset(gens)]
    r = len(basis)
    if r == dim:
        normals = _dual_rays([tuple(g) for g in gens], r)
        equations: tuple = ()
    else:
        coords = []
        for g in gens:
            c = solve_rational_system(basis, g)
            coords.append(primitive(c))
        ws = _dual_rays(coords, r)
        # functional w on coordinates -> ambient vector B^T (B B^T)^{-1} w
        gram_cols = [tuple(dot(b1, b2) for b1 in basis) for b2 in basis]
        normals = []
        for w in ws:
            y = solve_rational_system(gram_cols, w)
            v = [sum(y[k] * basis[k][j] for k in range(r)) for j in range(dim)]
            normals.append(primitive(v))
        equations = tuple(sorted((primitive(e) for e in nullspace(basis, dim)), key=gradlex_key))
    normals = tuple(sorted(set(normals), key=gradlex_key))
    return ConeFacets(dim, r, normals, equations)
