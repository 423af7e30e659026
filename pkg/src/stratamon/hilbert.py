"""Hilbert bases, Apery sets and primary representations."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence

from . import kernels
from .arith import IntVec, gradlex, gradlex_key, is_independent, ivec, rank, solve_rational_system, sub
from .errors import InputError, UnsupportedInstance
from .monoid import GeneratedSemigroup, Monoid, _generated_member, atom_box, membership

log = logging.getLogger(__name__)

# largest box (number of lattice points) enumerated for a Hilbert basis
MAX_BOX_POINTS = 20_000_000


@dataclass(frozen=True)
class HilbertBasis:
    atoms: tuple

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.atoms


@dataclass(frozen=True)
class AperySet:
    """``Ap(M, X)``; when ``complete`` is false only the box was searched."""

    base: tuple
    elements: tuple
    complete: bool
    box: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.elements


def _full_hilbert(M: Monoid) -> tuple:
    bounds = atom_box(M.source)
    size = prod(b + 1 for b in bounds)
    if size > MAX_BOX_POINTS:
        raise UnsupportedInstance(
            f"atom box {bounds} has {size} points, above the limit of {MAX_BOX_POINTS}"
        )
    log.debug("hilbert basis: enumerating box %s (%d points)", bounds, size)
    pts = kernels.congruence_members(M.source.coeffs, M.source.moduli, bounds)
    pts.sort(key=gradlex_key)
    return tuple(kernels.minimal_nonzero(pts))


def _generated_hilbert(M: Monoid) -> tuple:
    gens = gradlex(M.source.generators)
    atoms = []
    for g in gens:
        others = [h for h in gens if h != g]
        if not others or not _generated_member(others, g, {}):
            atoms.append(g)
    return tuple(atoms)


def hilbert_basis(M: Monoid) -> HilbertBasis:
    """The atoms of M in graded-lex order."""
    return M.cached(
        "hilbert_basis",
        lambda: HilbertBasis(_full_hilbert(M) if M.is_full else _generated_hilbert(M)),
    )


def _apery_certificate(M: Monoid, X: Sequence[IntVec]) -> Optional[list[IntVec]]:
    """Independent X' in X with every atom in cone(X'), if one exists.

    Then Ap(M, X) is contained in Ap(M, X'), which is finite.  For full M it
    even lies in D(X'), hence in the box ``[0, sum(x'_j) - 1]``.
    """
    atoms = hilbert_basis(M).atoms
    r = rank(atoms) if atoms else 0
    from .extraction import extremal_rays

    chosen: list[IntVec] = []
    for ray in extremal_rays(atoms):
        on_ray = [x for x in gradlex(X) if _same_ray(x, ray)]
        if not on_ray:
            return None
        chosen.append(on_ray[0])
    if len(chosen) != r or not is_independent(chosen):
        return None
    for a in atoms:
        c = solve_rational_system(chosen, a)
        if c is None or any(t < 0 for t in c):
            return None
    return chosen


def _same_ray(x: Sequence[int], y: Sequence[int]) -> bool:
    # positive multiples of each other
    n = len(x)
    for i in range(n):
        for j in range(n):
            if x[i] * y[j] != x[j] * y[i]:
                return False
    return sum(x) > 0 and sum(y) > 0


def _bfs_apery(M: Monoid, X: list[IntVec], cap: Sequence[int]) -> tuple[list[IntVec], bool]:
    # Ap(M, X) is closed under taking M-divisors, so it is reachable from 0 by
    # adding atoms one at a time without ever leaving the set.
    atoms = [a for a in hilbert_basis(M).atoms if a not in X]
    seen = {tuple([0] * M.dim)}
    frontier = list(seen)
    truncated = False
    while frontier:
        nxt = []
        for y in frontier:
            for a in atoms:
                z = tuple(u + v for u, v in zip(y, a))
                if z in seen:
                    continue
                if any(membership(M, sub(z, x)) for x in X):
                    continue
                if any(u > c for u, c in zip(z, cap)):
                    truncated = True
                    continue
                seen.add(z)
                nxt.append(z)
        frontier = nxt
    return gradlex(seen), not truncated


def apery(M: Monoid, X: Sequence[Sequence[int]], box_bound: int = 40) -> AperySet:
    """``Ap(M, X) = M minus (X + M)``.

    The result is flagged complete when the base certifies finiteness (it
    contains one element on each extreme ray of cone(M), independent and
    spanning the cone).  Otherwise only ``[0, box_bound]^n`` is searched.
    """
    if box_bound < 1:
        raise InputError("box bound must be positive")
    X = [ivec(x) for x in X]
    for x in X:
        if len(x) != M.dim:
            raise InputError(f"apery: base element {list(x)} has wrong dimension")
        if not any(x):
            raise InputError("apery: base elements must be nonzero")
        if not membership(M, x):
            raise InputError(f"apery: base element {list(x)} is not in the monoid")
    X = gradlex(X)
    cert = _apery_certificate(M, X) if X else None
    if M.is_full:
        if cert is not None:
            bounds = [max(sum(x[j] for x in cert) - 1, 0) for j in range(M.dim)]
            complete = True
        else:
            bounds = [box_bound] * M.dim
            complete = False
        pts = kernels.congruence_members(M.source.coeffs, M.source.moduli, bounds)
        elems = gradlex(kernels.not_dominating(pts, X))
        return AperySet(tuple(X), tuple(elems), complete, tuple(bounds))
    cap = [box_bound] * M.dim
    elems, finished = _bfs_apery(M, X, cap)
    return AperySet(tuple(X), tuple(elems), finished and cert is not None, tuple(cap))


def primary_representation(S, x, order: Optional[Sequence] = None) -> tuple:
    """Greedy coefficients ``k_i`` with ``x = sum(k_i * n_i)`` for a numerical semigroup.

    Each ``k_i`` is taken maximal so that the remainder stays in S, which
    leaves every partial tail inside the Apery set of the earlier generators.
    """
    if isinstance(S, Monoid):
        if S.is_full:
            raise InputError("primary_representation expects a generated semigroup")
        S = S.source
    if not isinstance(S, GeneratedSemigroup):
        S = GeneratedSemigroup(tuple((g,) if isinstance(g, int) else tuple(g) for g in S))
    if S.dim != 1:
        raise InputError("primary_representation is defined for dimension 1")
    gens = [g[0] for g in S.generators]
    if order is None:
        order = gens
    order = [o if isinstance(o, int) else o[0] for o in order]
    if sorted(order) != sorted(gens):
        raise InputError("order must be a permutation of the generators")
    if isinstance(x, int):
        x = (x,)
    x = ivec(x)
    memo: dict = {}
    vecs = S.generators
    if x[0] < 0 or not _generated_member(vecs, x, memo):
        raise InputError(f"{x[0]} is not in the semigroup")
    rem = x[0]
    out = []
    for n in order:
        k = rem // n
        while k > 0 and not _generated_member(vecs, (rem - k * n,), memo):
            k -= 1
        out.append(k)
        rem -= k * n
    if rem != 0:
        raise InputError("greedy representation did not terminate at 0")
    return tuple(out)
