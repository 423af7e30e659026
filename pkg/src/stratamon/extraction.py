"""Extraction grades, atom classification, coordinates and fundamental diamonds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, lcm
from typing import Sequence, Union

from .arith import IntVec, RatVec, dot, gradlex, is_independent, ivec, primitive, solve_rational_system
from .cone import ConeFacets, facets_of
from .errors import InputError, UnsupportedInstance
from .fourier_motzkin import cone_contains
from .hilbert import hilbert_basis
from .monoid import Monoid, membership

MAX_FACET_DIM = 4


def _on_ray(x: Sequence[int], y: Sequence[int]) -> bool:
    return primitive(x) == primitive(y)


def extremal_rays(atoms: Sequence[Sequence[int]]) -> list[IntVec]:
    """Primitive directions of the extreme rays of ``cone(atoms)``."""
    atoms = [tuple(a) for a in atoms]
    dirs = gradlex({primitive(a) for a in atoms if any(a)})
    return [d for d in dirs if not cone_contains([a for a in atoms if primitive(a) != d], d)]


def strong_atoms_of(atoms: Sequence[Sequence[int]]) -> list[IntVec]:
    """Atoms spanning an extreme ray of their cone on which no other atom lies."""
    atoms = gradlex(atoms)
    rays = set(extremal_rays(atoms))
    out = []
    for a in atoms:
        d = primitive(a)
        if d in rays and sum(1 for b in atoms if primitive(b) == d) == 1:
            out.append(a)
    return out


def cone_facets(M: Monoid) -> ConeFacets:
    """Inward primitive facet normals of cone(M), computed inside its span."""
    if M.dim > MAX_FACET_DIM:
        raise UnsupportedInstance(f"facet computation supports dim <= {MAX_FACET_DIM}, got {M.dim}")
    return M.cached("cone_facets", lambda: facets_of(hilbert_basis(M).atoms, M.dim))


def extraction_grade(M: Monoid, x: Sequence[int], y: Sequence[int]) -> Union[Fraction, float]:
    """min of v(y)/v(x) over facet normals v with v(x) > 0; ``inf`` if there is none."""
    x, y = ivec(x), ivec(y)
    if not any(x):
        raise InputError("extraction grade needs a nonzero first argument")
    for v, name in ((x, "x"), (y, "y")):
        if not membership(M, v):
            raise InputError(f"{name} = {list(v)} is not in the monoid")
    return grade_from_facets(cone_facets(M), x, y)


def grade_from_facets(F: ConeFacets, x: Sequence[int], y: Sequence[int]) -> Union[Fraction, float]:
    best = None
    for v in F.normals:
        vx = dot(v, x)
        if vx > 0:
            r = Fraction(dot(v, y), vx)
            if best is None or r < best:
                best = r
    return inf if best is None else best


@dataclass(frozen=True)
class AtomClassification:
    atom: IntVec
    extremal: bool
    pure: bool
    strong: bool

    def to_json(self) -> dict:
        return {"atom": list(self.atom), "extremal": self.extremal, "pure": self.pure, "strong": self.strong}


def classify_atom(M: Monoid, a: Sequence[int]) -> AtomClassification:
    """Extremal iff ``a`` is outside the cone of the atoms off its ray.

    In an affine monoid pure atoms are exactly the extremal ones, and an
    atom is strong when additionally it is the only atom on its ray.
    """
    a = ivec(a)
    atoms = hilbert_basis(M).atoms
    if a not in atoms:
        raise InputError(f"{list(a)} is not an atom")
    d = primitive(a)
    off = [b for b in atoms if primitive(b) != d]
    extremal = not cone_contains(off, a)
    alone = sum(1 for b in atoms if primitive(b) == d) == 1
    return AtomClassification(a, extremal, extremal, extremal and alone)


def coordinates(x: Sequence[int], Q: Sequence[Sequence[int]]) -> RatVec:
    """The nonnegative rationals r with ``x = sum(r_q * q)`` for independent Q."""
    x = ivec(x)
    Q = [ivec(q) for q in Q]
    if not is_independent(Q):
        raise InputError("coordinates: Q is linearly dependent")
    c = solve_rational_system(Q, x)
    if c is None or any(t < 0 for t in c):
        raise InputError(f"{list(x)} is not in the cone spanned by Q")
    return c


def in_D(x: Sequence[int], Q: Sequence[Sequence[int]]) -> bool:
    return all(0 <= t < 1 for t in coordinates(x, Q))


def mu(x: Sequence[int], Q: Sequence[Sequence[int]]) -> int:
    """Least m >= 1 with m*x an N-combination of Q."""
    out = 1
    for t in coordinates(x, Q):
        out = lcm(out, Fraction(t).denominator)
    return out


def is_inside_factorial_base(M: Monoid, Q: Sequence[Sequence[int]]) -> bool:
    """Q independent and every atom of M inside cone(Q)."""
    Q = [ivec(q) for q in Q]
    atoms = hilbert_basis(M).atoms
    for q in Q:
        if q not in atoms:
            raise InputError(f"{list(q)} is not an atom")
    if not Q or not is_independent(Q):
        return False
    for a in atoms:
        c = solve_rational_system(Q, a)
        if c is None or any(t < 0 for t in c):
            return False
    return True
