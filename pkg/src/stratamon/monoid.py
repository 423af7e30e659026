"""Affine monoids: congruence-defined full semigroups and generated semigroups."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Any, Callable, NamedTuple, Optional, Sequence

from .arith import (
    IntVec,
    LatticeBasis,
    gradlex,
    gradlex_key,
    integer_kernel_projection,
    is_independent,
    ivec,
    lattice_basis,
    lattice_member,
    nullspace,
    primitive,
    rank,
    solve_rational_system,
)
from .errors import InputError


@dataclass(frozen=True)
class CongruenceSystem:
    """Rows ``(coeffs, modulus)``; modulus 0 is an equality, d >= 2 a congruence mod d.

    Coefficients of congruence rows are stored reduced into ``[0, d)``.  An
    empty row list is allowed and defines the whole of N^dim.
    """

    dim: int
    rows: tuple

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InputError("congruence system: dim must be a positive integer")
        canon = []
        for row in self.rows:
            coeffs, d = row
            coeffs = ivec(coeffs)
            if len(coeffs) != self.dim:
                raise InputError(f"congruence row has {len(coeffs)} coefficients, expected {self.dim}")
            if isinstance(d, bool) or not isinstance(d, int) or d < 0:
                raise InputError(f"invalid modulus {d!r}")
            if d == 1:
                raise InputError("modulus 1 is vacuous; drop the row instead")
            if d:
                coeffs = tuple(c % d for c in coeffs)
            canon.append((coeffs, d))
        object.__setattr__(self, "rows", tuple(canon))

    @property
    def coeffs(self) -> list[IntVec]:
        return [r[0] for r in self.rows]

    @property
    def moduli(self) -> list[int]:
        return [r[1] for r in self.rows]

    def satisfied(self, x: Sequence[int]) -> bool:
        for a, d in self.rows:
            s = sum(c * v for c, v in zip(a, x))
            if (s % d if d else s) != 0:
                return False
        return True


@dataclass(frozen=True)
class GeneratedSemigroup:
    generators: tuple

    def __post_init__(self):
        gens = []
        dim = None
        for g in self.generators:
            g = ivec(g)
            if dim is None:
                dim = len(g)
            elif len(g) != dim:
                raise InputError("generators must share one dimension")
            if any(a < 0 for a in g):
                raise InputError(f"generator {list(g)} has a negative entry")
            if not any(g):
                raise InputError("the zero vector is not a valid generator")
            if g not in gens:
                gens.append(g)
        if not gens:
            raise InputError("at least one generator is required")
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def dim(self) -> int:
        return len(self.generators[0])


class Monoid:
    """A full (congruence) or generated affine monoid with lazily filled caches.

    Cache entries are computed at most once; a lock serializes population so
    concurrent first accesses see a single computation.
    """

    def __init__(self, source: CongruenceSystem | GeneratedSemigroup):
        if isinstance(source, CongruenceSystem):
            self.kind = "full"
        elif isinstance(source, GeneratedSemigroup):
            self.kind = "generated"
        else:
            raise InputError(f"unsupported monoid source {type(source).__name__}")
        self.source = source
        self.dim = source.dim
        self._cache: dict[str, Any] = {}
        self._lock = threading.RLock()
        self._memo: dict[IntVec, bool] = {}

    @classmethod
    def congruence(cls, dim: int, rows: Sequence) -> "Monoid":
        return cls(CongruenceSystem(dim, tuple(rows)))

    @classmethod
    def generated(cls, vectors: Sequence[Sequence[int]]) -> "Monoid":
        return cls(GeneratedSemigroup(tuple(tuple(v) for v in vectors)))

    @property
    def is_full(self) -> bool:
        return self.kind == "full"

    def cached(self, key: str, compute: Callable[[], Any]) -> Any:
        if key in self._cache:
            return self._cache[key]
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def __repr__(self) -> str:
        if self.is_full:
            rows = ", ".join(f"{list(a)}{'=0' if not d else f'=0 mod {d}'}" for a, d in self.source.rows)
            return f"Monoid(full, dim={self.dim}, rows=[{rows}])"
        return f"Monoid(generated, {[list(g) for g in self.source.generators]})"

    def to_json(self) -> dict:
        if self.is_full:
            return {
                "kind": "congruence",
                "dim": self.dim,
                "rows": [{"coeffs": list(a), "mod": d} for a, d in self.source.rows],
            }
        return {"kind": "generators", "vectors": [list(g) for g in self.source.generators]}


def _check_dim(M: Monoid, x: Sequence[int], what: str) -> IntVec:
    x = ivec(x)
    if len(x) != M.dim:
        raise InputError(f"{what}: expected a vector of length {M.dim}, got {len(x)}")
    return x


def _generated_member(gens: Sequence[IntVec], x: IntVec, memo: dict) -> bool:
    # iterative DFS over generator subtractions, memoized on the remainder
    if not any(x):
        return True
    stack = [x]
    while stack:
        y = stack[-1]
        if y in memo:
            stack.pop()
            continue
        pending = False
        found = False
        for g in gens:
            z = tuple(a - b for a, b in zip(y, g))
            if min(z) < 0:
                continue
            if not any(z):
                found = True
                break
            r = memo.get(z)
            if r is True:
                found = True
                break
            if r is None:
                stack.append(z)
                pending = True
                break
        if found:
            memo[y] = True
            stack.pop()
        elif not pending:
            memo[y] = False
            stack.pop()
    return memo[x]


def membership(M: Monoid, x: Sequence[int]) -> bool:
    """Is ``x`` an element of ``M``?"""
    x = _check_dim(M, x, "membership")
    if any(a < 0 for a in x):
        return False
    if M.is_full:
        return M.source.satisfied(x)
    with M._lock:
        return _generated_member(M.source.generators, x, M._memo)


def solution_lattice(M: Monoid) -> LatticeBasis:
    """Integer solutions of the defining system (Full kind only)."""
    if not M.is_full:
        raise InputError("solution_lattice is defined for congruence monoids only")
    return M.cached(
        "solution_lattice",
        lambda: integer_kernel_projection(M.source.coeffs, M.source.moduli, M.dim),
    )


def group_lattice(M: Monoid) -> LatticeBasis:
    """Canonical basis of the quotient group G(M), generated by the atoms."""
    from .hilbert import hilbert_basis

    return M.cached("group_lattice", lambda: lattice_basis(hilbert_basis(M).atoms, dim=M.dim))


def equality_rays(system: CongruenceSystem) -> list[IntVec]:
    """Primitive extreme rays of ``{x >= 0 : equality rows}``.

    These are the nonnegative kernel vectors of minimal support, found by
    scanning supports of increasing size.
    """
    n = system.dim
    eqs = [a for a, d in system.rows if d == 0]
    if not eqs or rank(eqs) == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[IntVec] = []
    supports: list[frozenset] = []
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            s = frozenset(S)
            if any(t <= s for t in supports):
                continue
            sub = [[a[j] for j in S] for a in eqs]
            ker = nullspace(sub, size)
            if len(ker) != 1:
                continue
            w = primitive(ker[0])
            if all(c < 0 for c in w):
                w = tuple(-c for c in w)
            if not all(c > 0 for c in w):
                continue
            full = [0] * n
            for j, c in zip(S, w):
                full[j] = c
            rays.append(tuple(full))
            supports.append(s)
    return rays


def atom_box(system: CongruenceSystem) -> list[int]:
    """Per-coordinate bounds containing every atom of the full monoid.

    Each extreme ray of the equality cone is scaled to the least multiple
    that also meets the congruences; an atom either is one of these ray
    points or has simplicial coordinates all below 1, so it is bounded by
    their sum.
    """
    bounds = [0] * system.dim
    for g in equality_rays(system):
        k = 1
        for a, d in system.rows:
            if d:
                s = sum(c * v for c, v in zip(a, g))
                k = lcm(k, d // gcd(d, s))
        for j, c in enumerate(g):
            bounds[j] += k * c
    return bounds


class RootClosure(NamedTuple):
    closed: bool
    witness: Optional[IntVec]
    box: int


def _simplicial_multiple(gens: Sequence[IntVec], x: IntVec) -> Optional[int]:
    # least k with k*x in the N-span of some independent subset, if x is in the cone
    r = rank(gens)
    best = None
    for sub in combinations(gens, r):
        if not is_independent(sub):
            continue
        c = solve_rational_system(sub, x)
        if c is None or any(t < 0 for t in c):
            continue
        k = 1
        for t in c:
            k = lcm(k, Fraction(t).denominator)
        best = k if best is None else min(best, k)
    return best


def is_root_closed(M: Monoid, box_bound: int = 20) -> RootClosure:
    """Search ``[0, box_bound]^n`` for x in G(M) and cone(M) with x not in M.

    Full monoids are root-closed outright.  For generated monoids a witness
    x has some multiple in M; the multiple used is the least common
    denominator of x in a simplicial subcone, so ``k * x`` lies in the
    N-span of generators and is checked by membership again.
    """
    if box_bound < 1:
        raise InputError("box bound must be positive")
    if M.is_full:
        return RootClosure(True, None, box_bound)
    gens = list(M.source.generators)
    L = lattice_basis(gens)
    pts = sorted(product(range(box_bound + 1), repeat=M.dim), key=gradlex_key)
    for x in pts:
        if membership(M, x) or not lattice_member(x, L):
            continue
        k = _simplicial_multiple(gens, x)
        if k is None:
            continue
        if membership(M, tuple(k * a for a in x)):
            return RootClosure(False, x, box_bound)
    return RootClosure(True, None, box_bound)


class Embedding(NamedTuple):
    a: int
    b: int
    c: int

    def __call__(self, v: Sequence[int]) -> IntVec:
        x, y = v
        s = self.a * x + self.b * y
        if s % self.c:
            raise InputError(f"({x},{y}) does not satisfy the congruence")
        return (x, y, s // self.c)

    def describe(self) -> str:
        return f"(x,y) -> (x, y, ({self.a}x+{self.b}y)/{self.c})"


def elliott_monoid(a: int, b: int, c: int) -> tuple[Monoid, Embedding]:
    """The monoid {ax+by = 0 mod c} and its isomorphism onto {ax+by = cz}."""
    for name, v in (("a", a), ("b", b), ("c", c)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise InputError(f"elliott_monoid: {name} must be a positive integer")
    rows = [] if c == 1 else [((a, b), c)]
    return Monoid(CongruenceSystem(2, tuple(rows))), Embedding(a, b, c)


def monoid_from_json(desc: Any) -> Monoid:
    """Build a monoid from the JSON description used by the CLI."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputError("monoid description must be an object with a 'kind' field")
    kind = desc["kind"]
    try:
        if kind == "congruence":
            rows = [(tuple(r["coeffs"]), r["mod"]) for r in desc["rows"]]
            dim = desc.get("dim", len(rows[0][0]) if rows else None)
            if dim is None:
                raise InputError("congruence description needs 'dim' when there are no rows")
            return Monoid(CongruenceSystem(dim, tuple(rows)))
        if kind == "generators":
            return Monoid(GeneratedSemigroup(tuple(tuple(v) for v in desc["vectors"])))
        if kind == "elliott":
            return elliott_monoid(desc["a"], desc["b"], desc["c"])[0]
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"malformed {kind} description: {exc!r}") from exc
    raise InputError(f"unknown monoid kind {kind!r}")


def members_in_box(M: Monoid, bounds: Sequence[int]) -> list[IntVec]:
    """Members of M in ``prod([0, b_j])``, graded-lex ordered."""
    from . import kernels

    if M.is_full:
        pts = kernels.congruence_members(M.source.coeffs, M.source.moduli, bounds)
    else:
        pts = [x for x in product(*(range(b + 1) for b in bounds)) if membership(M, x)]
    return gradlex(pts)
