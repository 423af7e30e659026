"""Exact integer and rational linear algebra.

Vectors are plain tuples of Python ints (``IntVec``) or of
:class:`fractions.Fraction` (``RatVec``).  Nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import InputError

IntVec = tuple  # tuple[int, ...]
RatVec = tuple  # tuple[Fraction, ...]
Rat = Fraction


def ivec(v: Iterable[int]) -> IntVec:
    out = tuple(v)
    for c in out:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InputError(f"expected integer entries, got {c!r}")
    return out


def gradlex_key(v: Sequence[int]):
    """Sort key for graded lexicographic order: total degree, then lex."""
    return (sum(v), tuple(v))


def gradlex(vectors: Iterable[Sequence[int]]) -> list:
    return sorted({tuple(v) for v in vectors}, key=gradlex_key)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(k, v: Sequence) -> tuple:
    return tuple(k * a for a in v)


def combo(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> tuple:
    """Return ``sum(c * v)``; ``dim`` is needed when ``vectors`` is empty."""
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for j, a in enumerate(v):
                out[j] += c * a
    return tuple(out)


def leq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def is_nonneg(v: Sequence) -> bool:
    return all(a >= 0 for a in v)


def primitive(v: Sequence) -> IntVec:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(a) for a in v]
    den = 1
    for a in fr:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def _check_dims(vectors: Sequence[Sequence], dim: int, what: str) -> None:
    for v in vectors:
        if len(v) != dim:
            raise InputError(f"{what}: dimension mismatch ({len(v)} != {dim})")


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    return len(row_echelon(vectors)[1])


def is_independent(vectors: Sequence[Sequence]) -> bool:
    return rank(vectors) == len(vectors)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RatVec]:
    """Basis of {x in Q^ncols : rows . x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = row_echelon(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def solve_rational_system(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[RatVec]:
    """Solve ``sum(c_j * columns[j]) == target`` exactly.

    Returns the unique solution, or ``None`` when ``target`` is outside the
    span of the columns.  Dependent columns are an input error because the
    solution would not be unique.
    """
    dim = len(target)
    _check_dims(columns, dim, "solve_rational_system")
    k = len(columns)
    if k == 0:
        return () if not any(target) else None
    # augmented matrix, one row per coordinate
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    red, piv = row_echelon(aug)
    if k in piv:
        return None
    if len(piv) < k:
        raise InputError("solve_rational_system: columns are linearly dependent")
    sol = [Fraction(0)] * k
    for r, p in zip(red, piv):
        sol[p] = r[k]
    return tuple(sol)


# ---------------------------------------------------------------- lattices


@dataclass(frozen=True)
class LatticeBasis:
    """Row-style Hermite normal form of a subgroup of Z^dim.

    Rows are in echelon form with strictly increasing pivot columns, each
    pivot positive, and every entry above a pivot reduced into
    ``[0, pivot)``.  This form is unique for a lattice, so equality of
    ``LatticeBasis`` objects is lattice equality.
    """

    dim: int
    rows: tuple

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.rows]

    def reduce(self, v: Sequence[int]) -> IntVec:
        return lattice_reduce(v, self)

    def __contains__(self, v) -> bool:
        return lattice_member(v, self)

    def index(self) -> int:
        """Index in Z^dim (0 when the lattice is not of full rank)."""
        if self.rank < self.dim:
            return 0
        out = 1
        for r, p in zip(self.rows, self.pivots()):
            out *= r[p]
        return out


def _hnf(rows: list[list[int]], ncols: int) -> list[list[int]]:
    # Deterministic rule: in each column the row of smallest nonzero |entry|
    # (earliest on ties) becomes the pivot; the others are reduced by floor
    # division until only the pivot row is nonzero in that column.
    rows = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(rows[i][c]), i))
            if len(nz) == 1:
                break
            prow = rows[p]
            for i in nz:
                if i != p:
                    q = rows[i][c] // prow[c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], prow)]
        nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not nz:
            continue
        p = nz[0]
        rows[r], rows[p] = rows[p], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        piv = rows[r][c]
        for i in range(r):
            q = rows[i][c] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rows = rows[:r] + [x for x in rows[r:] if any(x)]
        if r == len(rows):
            break
    return rows[:r]


def lattice_basis(vectors: Sequence[Sequence[int]], dim: Optional[int] = None) -> LatticeBasis:
    """Canonical basis of the subgroup of Z^n generated by ``vectors``."""
    vectors = [ivec(v) for v in vectors]
    if not vectors:
        if dim is None:
            raise InputError("lattice_basis: empty input")
        return LatticeBasis(dim, ())
    n = len(vectors[0])
    _check_dims(vectors, n, "lattice_basis")
    return LatticeBasis(n, tuple(tuple(r) for r in _hnf([list(v) for v in vectors], n)))


def lattice_reduce(v: Sequence[int], L: LatticeBasis) -> IntVec:
    """Canonical representative of ``v + L``: pivot entries land in ``[0, pivot)``."""
    if len(v) != L.dim:
        raise InputError(f"lattice_reduce: dimension mismatch ({len(v)} != {L.dim})")
    w = list(v)
    for row in L.rows:
        p = next(j for j, a in enumerate(row) if a)
        q = w[p] // row[p]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def lattice_member(v: Sequence[int], L: LatticeBasis) -> bool:
    return not any(lattice_reduce(v, L))


def integer_kernel_projection(rows: Sequence[Sequence[int]], moduli: Sequence[int], n: int) -> LatticeBasis:
    """Lattice of x in Z^n with ``row . x == 0 (mod d)``; ``d == 0`` means equality."""
    r = len(rows)
    mat = []
    for j in range(n):
        mat.append([rows[i][j] for i in range(r)] + [int(j == k) for k in range(n)])
    for i, d in enumerate(moduli):
        if d:
            mat.append([d if k == i else 0 for k in range(r)] + [0] * n)
    h = _hnf(mat, r + n)
    kernel = [row[r:] for row in h if not any(row[:r])]
    return lattice_basis(kernel, dim=n)
