"""Brute-force reference implementations.

Everything here works from the membership test alone: no cone geometry,
no lattice reduction and no compiled kernels.  Slow on purpose.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .arith import IntVec, gradlex, ivec
from .errors import InputError
from .monoid import Monoid, membership


@dataclass(frozen=True)
class Box:
    bounds: tuple

    def __post_init__(self):
        b = ivec(self.bounds)
        if any(c < 0 for c in b):
            raise InputError("box bounds must be nonnegative")
        object.__setattr__(self, "bounds", b)

    @classmethod
    def cube(cls, dim: int, side: int) -> "Box":
        return cls(tuple([side] * dim))

    def points(self):
        return product(*(range(c + 1) for c in self.bounds))


def _box(M: Monoid, b) -> Box:
    if isinstance(b, int):
        return Box.cube(M.dim, b)
    return b if isinstance(b, Box) else Box(tuple(b))


def enum_monoid(M: Monoid, b) -> set:
    return {x for x in _box(M, b).points() if membership(M, x)}


def brute_atoms(M: Monoid, b) -> set:
    """Nonzero box members that are not the sum of two nonzero members."""
    members = enum_monoid(M, b)
    atoms = set()
    for x in members:
        if not any(x):
            continue
        split = False
        for y in product(*(range(c + 1) for c in x)):
            if any(y) and y != x and y in members and tuple(u - v for u, v in zip(x, y)) in members:
                split = True
                break
        if not split:
            atoms.add(x)
    return atoms


def brute_lambda(M: Monoid, x: Sequence[int], y: Sequence[int], max_den: int = 60) -> Fraction:
    """max over n <= max_den of (largest m with n*y - m*x in M) / n.

    A lower bound for the supremum, exact whenever its denominator divides
    some n <= max_den.
    """
    x, y = ivec(x), ivec(y)
    if not any(x):
        raise InputError("brute_lambda needs a nonzero x")
    best = Fraction(0)
    for n in range(1, max_den + 1):
        top = min(n * b // a for a, b in zip(x, y) if a > 0)
        for m in range(top, -1, -1):
            if membership(M, tuple(n * b - m * a for a, b in zip(x, y))):
                best = max(best, Fraction(m, n))
                break
    return best


def brute_apery(M: Monoid, X: Sequence[Sequence[int]], b) -> list:
    X = [ivec(x) for x in X]
    out = []
    for y in enum_monoid(M, b):
        if not any(membership(M, tuple(u - v for u, v in zip(y, x))) for x in X):
            out.append(y)
    return gradlex(out)


def _combos(atoms: list[IntVec], x: IntVec):
    # every coefficient vector c with sum(c_i * atoms_i) == x
    if not atoms:
        if not any(x):
            yield ()
        return
    a, rest = atoms[0], atoms[1:]
    k = 0
    cur = x
    while all(v >= 0 for v in cur):
        for tail in _combos(rest, cur):
            yield (k,) + tail
        k += 1
        cur = tuple(u - v for u, v in zip(cur, a))


def brute_representations(M: Monoid, S, x: Sequence[int]) -> list:
    """All layered representations of x whose tails avoid the earlier strata."""
    from .stratify import Representation

    x = ivec(x)
    layers = [list(H) for H in S.layers]
    flat = [a for H in layers for a in H]
    out = []
    for c in _combos(flat, x):
        coeffs, pos = [], 0
        for H in layers:
            coeffs.append(tuple(c[pos:pos + len(H)]))
            pos += len(H)
        rep = Representation(tuple(coeffs), x)
        ok = True
        for i, tail in enumerate(rep.tails(layers)):
            for a in (a for H in layers[:i] for a in H):
                if membership(M, tuple(u - v for u, v in zip(tail, a))):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(rep)
    return out
