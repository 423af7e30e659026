"""Stratification of the atom set and the layered unique representation.

Stage ``i`` works in ``M_i``, the monoid generated by the atoms not yet
assigned.  Its stratum ``H_i`` is the set of strong atoms of ``M_i``, and the
stage is certified when ``H_i`` is independent, every remaining atom lies in
``cone(H_i)`` and no two elements of ``Ap(M_i, H_i)`` differ by an element of
the lattice spanned by ``H_i``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import ceil, gcd
from typing import Iterator, Optional, Sequence

from .arith import (
    IntVec,
    combo,
    dot,
    gradlex,
    ivec,
    is_independent,
    lattice_basis,
    lattice_reduce,
    nullspace,
    primitive,
    solve_rational_system,
    sub,
)
from .errors import ConsistencyError, InputError, UnsupportedInstance
from .extraction import cone_facets, strong_atoms_of
from .hilbert import AperySet, apery, hilbert_basis
from .monoid import Monoid, membership

log = logging.getLogger(__name__)

WITNESS_MAX_SUM = 12


# ------------------------------------------------------------------ types


@dataclass(frozen=True)
class Relation:
    """Two distinct N-combinations of atoms with the same value.

    Each side is a tuple of ``(coefficient, atom)`` pairs with disjoint
    supports.
    """

    lhs: tuple
    rhs: tuple

    @property
    def value(self) -> IntVec:
        dim = len((self.lhs or self.rhs)[0][1])
        return combo([c for c, _ in self.lhs], [a for _, a in self.lhs], dim)

    def holds(self) -> bool:
        dim = len((self.lhs or self.rhs)[0][1])
        right = combo([c for c, _ in self.rhs], [a for _, a in self.rhs], dim)
        return self.value == right

    def same_as(self, other: "Relation") -> bool:
        return {frozenset(self.lhs), frozenset(self.rhs)} == {frozenset(other.lhs), frozenset(other.rhs)}

    def __str__(self) -> str:
        def side(terms):
            return " + ".join(
                (f"{c}" if c != 1 else "") + "(" + ",".join(map(str, a)) + ")" for c, a in terms
            )

        return f"{side(self.lhs)} = {side(self.rhs)}"

    def to_json(self) -> dict:
        return {
            "lhs": [{"coeff": c, "atom": list(a)} for c, a in self.lhs],
            "rhs": [{"coeff": c, "atom": list(a)} for c, a in self.rhs],
            "value": list(self.value),
            "text": str(self),
        }


@dataclass(frozen=True)
class Stratum:
    atoms: tuple
    independent: bool
    base_certified: bool
    s3_certified: bool
    apery: tuple = ()
    apery_complete: bool = False

    def to_json(self) -> dict:
        return {
            "atoms": [list(a) for a in self.atoms],
            "independent": self.independent,
            "base_certified": self.base_certified,
            "s3_certified": self.s3_certified,
            "apery_size": len(self.apery),
            "apery_complete": self.apery_complete,
        }


@dataclass(frozen=True)
class Failure:
    stage: int
    reason: str
    witness: Optional[Relation]

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "reason": self.reason,
            "witness": self.witness.to_json() if self.witness else None,
        }


@dataclass(frozen=True)
class Stratification:
    strata: tuple
    failure: Optional[Failure] = None

    @property
    def status(self) -> str:
        return "complete" if self.failure is None else "failed"

    @property
    def complete(self) -> bool:
        return self.failure is None

    @property
    def layers(self) -> list[tuple]:
        return [s.atoms for s in self.strata]

    @classmethod
    def from_strata(cls, layers: Sequence[Sequence[Sequence[int]]]) -> "Stratification":
        """An uncertified stratification with the given layers (for experiments)."""
        return cls(tuple(Stratum(tuple(ivec(a) for a in H), False, False, False) for H in layers))

    def to_json(self) -> dict:
        out = {"status": self.status, "strata": [s.to_json() for s in self.strata]}
        if self.failure is not None:
            out["failure"] = self.failure.to_json()
        return out


@dataclass(frozen=True)
class Representation:
    coefficients: tuple  # one tuple of ints per stratum
    value: IntVec

    def tails(self, layers: Sequence[Sequence[IntVec]]) -> list[IntVec]:
        """``tails()[i]`` is the sum of the parts from stratum ``i`` on."""
        dim = len(self.value)
        parts = [combo(c, H, dim) for c, H in zip(self.coefficients, layers)]
        out = []
        acc = tuple([0] * dim)
        for p in reversed(parts):
            acc = tuple(u + v for u, v in zip(acc, p))
            out.append(acc)
        return out[::-1]

    def to_json(self) -> dict:
        return {"coefficients": [list(c) for c in self.coefficients], "value": list(self.value)}


class S3Result:
    """Outcome of the coprimality check; truthy when it passed."""

    def __init__(self, ok: bool, apery_set: AperySet, pair: Optional[tuple] = None, witness: Optional[Relation] = None):
        self.ok = ok
        self.apery = apery_set
        self.pair = pair
        self.witness = witness

    @property
    def box_limited(self) -> bool:
        return not self.apery.complete

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return f"S3Result(ok={self.ok}, box_limited={self.box_limited}, pair={self.pair})"


# ------------------------------------------------------------------ helpers


def _order_stratum(H: Sequence[IntVec]) -> tuple:
    H = gradlex(H)
    if len(H) == 2 and len(H[0]) == 2:
        a, b = H
        # steeper direction first
        if b[1] * a[0] > a[1] * b[0]:
            a, b = b, a
        return (a, b)
    return tuple(H)


def _factor(atoms: Sequence[IntVec], x: IntVec) -> Optional[dict]:
    """Some N-combination of ``atoms`` equal to ``x`` (depth-first)."""
    memo: dict = {}

    def go(y):
        if not any(y):
            return {}
        if y in memo:
            return memo[y]
        memo[y] = None
        for a in atoms:
            z = sub(y, a)
            if min(z) < 0:
                continue
            r = go(z)
            if r is not None:
                r = dict(r)
                r[a] = r.get(a, 0) + 1
                memo[y] = r
                return r
        return None

    return go(tuple(x))


def _relation(left: dict, right: dict) -> Relation:
    keys = set(left) | set(right)
    lhs, rhs = [], []
    for a in gradlex(keys):
        d = left.get(a, 0) - right.get(a, 0)
        if d > 0:
            lhs.append((d, a))
        elif d < 0:
            rhs.append((-d, a))
    return Relation(tuple(lhs), tuple(rhs))


def _compositions(k: int, total: int) -> Iterator[tuple]:
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(k - 1, total - first):
            yield (first,) + rest


def find_relation(atoms: Sequence[Sequence[int]], max_sum: int = WITNESS_MAX_SUM) -> Optional[Relation]:
    """Smallest N-relation among ``atoms`` by coefficient sum, if any.

    Searches combinations by increasing coefficient sum (up to ``max_sum``)
    and returns the first value reached twice.  If nothing turns up and the
    atoms are dependent, a relation is read off an integer kernel vector.
    """
    atoms = [ivec(a) for a in atoms]
    if not atoms:
        return None
    dim = len(atoms[0])
    seen: dict = {}
    for s in range(max_sum + 1):
        for c in _compositions(len(atoms), s):
            v = combo(c, atoms, dim)
            if v in seen:
                left = dict(zip(atoms, seen[v]))
                right = dict(zip(atoms, c))
                return _relation(left, right)
            seen[v] = c
    if is_independent(atoms):
        return None
    cols = [[a[j] for a in atoms] for j in range(dim)]
    k = primitive(nullspace(cols, len(atoms))[0])
    left = {a: c for a, c in zip(atoms, k) if c > 0}
    right = {a: -c for a, c in zip(atoms, k) if c < 0}
    return _relation(left, right)


def _stage_monoid(M: Monoid, stage: int, R: Sequence[IntVec]) -> Monoid:
    return M if stage == 1 else Monoid.generated(R)


# ------------------------------------------------------------------ S3


def check_S3(Mi: Monoid, H: Sequence[Sequence[int]], box_bound: int = 40) -> S3Result:
    """No two Apery elements of ``Mi`` w.r.t. ``H`` differ by an element of G(H)."""
    H = [ivec(h) for h in H]
    ap = apery(Mi, H, box_bound)
    if not H:
        return S3Result(len(ap.elements) <= 1, ap)
    L = lattice_basis(H)
    reps: dict = {}
    for w in ap.elements:
        key = lattice_reduce(w, L)
        if key in reps:
            w0 = reps[key]
            return S3Result(False, ap, (w0, w), _s3_witness(Mi, H, w0, w))
        reps[key] = w
    return S3Result(True, ap)


def _s3_witness(Mi: Monoid, H: list[IntVec], w0: IntVec, w1: IntVec) -> Optional[Relation]:
    # w1 - w0 = sum(c_q q) with integer c; move the negative part across
    atoms = list(hilbert_basis(Mi).atoms)
    c = solve_rational_system(H, sub(w1, w0)) if is_independent(H) else None
    f0, f1 = _factor(atoms, w0), _factor(atoms, w1)
    if c is None or f0 is None or f1 is None:
        return None
    left, right = dict(f1), dict(f0)
    for q, t in zip(H, c):
        t = int(t)
        if t < 0:
            left[q] = left.get(q, 0) - t
        elif t > 0:
            right[q] = right.get(q, 0) + t
    return _relation(left, right)


# ------------------------------------------------------------------ stratify


def stratify(M: Monoid, box_bound: int = 40) -> Stratification:
    """Peel off strong atoms stage by stage, certifying each stratum.

    Stops at the first stage whose certificate fails; the failure records
    the stage number and, when available, a relation witnessing it.
    """
    R = list(hilbert_basis(M).atoms)
    strata: list[Stratum] = []
    stage = 1
    while R:
        Mi = _stage_monoid(M, stage, R)
        H = list(_order_stratum(strong_atoms_of(R)))
        log.info("stage %d: %d remaining atoms, %d strong", stage, len(R), len(H))
        if not H:
            return Stratification(tuple(strata), Failure(stage, "no strong atoms", find_relation(R)))
        indep = is_independent(H)
        if not indep:
            st = Stratum(tuple(H), False, False, False)
            return Stratification(tuple(strata) + (st,), Failure(stage, "S1: stratum is dependent", find_relation(H)))
        base = True
        for a in R:
            c = solve_rational_system(H, a)
            if c is None or any(t < 0 for t in c):
                base = False
                break
        if not base:
            st = Stratum(tuple(H), True, False, False)
            return Stratification(tuple(strata) + (st,), Failure(stage, "remaining atoms leave cone(H)", None))
        s3 = check_S3(Mi, H, box_bound)
        st = Stratum(tuple(H), True, True, s3.ok, s3.apery.elements, s3.apery.complete)
        if not s3.ok:
            return Stratification(tuple(strata) + (st,), Failure(stage, "S3: Apery elements congruent mod G(H)", s3.witness))
        if not s3.apery.complete:
            log.warning("stage %d: Apery set only searched in box %s", stage, s3.apery.box)
        strata.append(st)
        R = [a for a in R if a not in H]
        stage += 1
    return Stratification(tuple(strata))


@dataclass(frozen=True)
class PeelStage:
    atoms: tuple
    independent: bool
    relation: Optional[Relation]


def peel_strong_atoms(M: Monoid) -> list[PeelStage]:
    """Strong atoms of the remaining atoms, stage after stage, with no certification.

    Each stage reports whether it is independent and, if not, the smallest
    relation among its atoms.
    """
    R = list(hilbert_basis(M).atoms)
    out = []
    while R:
        H = list(_order_stratum(strong_atoms_of(R)))
        if not H:
            break
        indep = is_independent(H)
        out.append(PeelStage(tuple(H), indep, None if indep else find_relation(H)))
        R = [a for a in R if a not in H]
    return out


# ------------------------------------------------------------------ decompose


def _nonneg_int_coords(H: Sequence[IntVec], v: IntVec) -> Optional[tuple]:
    c = solve_rational_system(H, v)
    if c is None or any(t < 0 or Fraction(t).denominator != 1 for t in c):
        return None
    return tuple(int(t) for t in c)


def decompose(M: Monoid, S: Stratification, x: Sequence[int]) -> Representation:
    """The layered representation of ``x``: floors of coordinates stage by stage."""
    x = ivec(x)
    if not S.complete:
        raise InputError("decompose needs a complete stratification")
    if len(x) != M.dim or not membership(M, x):
        raise InputError(f"{list(x)} is not in the monoid")
    rem = x
    coeffs = []
    for i, st in enumerate(S.strata):
        H = list(st.atoms)
        c = solve_rational_system(H, rem)
        if c is None or any(t < 0 for t in c):
            raise ConsistencyError(f"stage {i + 1}: remainder {list(rem)} leaves cone(H)")
        fl = tuple(int(t // 1) for t in c)
        tail = sub(rem, combo(fl, H, M.dim))
        ap = set(st.apery) if st.apery else {tuple([0] * M.dim)}
        if tail not in ap:
            for w in gradlex(ap):
                found = _nonneg_int_coords(H, sub(rem, w)) if min(sub(rem, w)) >= 0 else None
                if found is not None:
                    fl, tail = found, w
                    break
            else:
                raise ConsistencyError(f"stage {i + 1}: no Apery remainder for {list(rem)}")
        coeffs.append(fl)
        rem = tail
    if any(rem):
        raise ConsistencyError(f"nonzero final remainder {list(rem)}")
    rep = Representation(tuple(coeffs), x)
    layers = S.layers
    for i, t in enumerate(rep.tails(layers)):
        for H in layers[:i]:
            for a in H:
                if membership(M, sub(t, a)):
                    raise ConsistencyError(f"tail {list(t)} of stage {i + 1} is divisible by {list(a)}")
    return rep


# ------------------------------------------------------------------ parametrize


@dataclass(frozen=True)
class Symbol:
    name: str
    atom: IntVec
    stratum: int


@dataclass(frozen=True)
class Constraint:
    """``sum(c * symbol) < bound`` over nonnegative integer symbols."""

    coeffs: tuple  # ((name, c), ...) with c > 0
    bound: int

    def holds(self, values: dict) -> bool:
        return sum(c * values[s] for s, c in self.coeffs) < self.bound

    def implies(self, other: "Constraint") -> bool:
        # self: c'.s <= b'-1  ==>  other: c.s <= b-1 for all s >= 0
        mine = dict(self.coeffs)
        t = None
        for s, c in other.coeffs:
            r = Fraction(mine.get(s, 0), c)
            t = r if t is None else min(t, r)
        if t is None:
            return other.bound > 0
        if t == 0:
            return False
        return t * (other.bound - 1) >= self.bound - 1

    def __str__(self) -> str:
        terms = " + ".join((f"{c}" if c != 1 else "") + s for s, c in self.coeffs)
        return f"{terms} < {self.bound}"

    def to_json(self) -> dict:
        return {"coeffs": dict(self.coeffs), "strict_lt": self.bound, "le": self.bound - 1}


@dataclass(frozen=True)
class AnyOf:
    options: tuple

    def holds(self, values: dict) -> bool:
        return any(o.holds(values) for o in self.options)

    def __str__(self) -> str:
        return " or ".join(f"({o})" for o in self.options)

    def to_json(self) -> dict:
        return {"any_of": [o.to_json() for o in self.options]}


@dataclass(frozen=True)
class Parametrization:
    symbols: tuple
    constraints: tuple

    @property
    def free(self) -> list[str]:
        used = set()
        for k in self.constraints:
            for o in (k.options if isinstance(k, AnyOf) else (k,)):
                used.update(s for s, _ in o.coeffs)
        return [s.name for s in self.symbols if s.name not in used]

    def admits(self, values: dict) -> bool:
        return all(k.holds(values) for k in self.constraints)

    def value(self, values: dict) -> IntVec:
        dim = len(self.symbols[0].atom)
        return combo([values[s.name] for s in self.symbols], [s.atom for s in self.symbols], dim)

    def without(self, index: int) -> "Parametrization":
        return replace(self, constraints=self.constraints[:index] + self.constraints[index + 1:])

    def to_json(self) -> dict:
        return {
            "symbols": [{"atom": list(s.atom), "name": s.name, "stratum": s.stratum} for s in self.symbols],
            "constraints": [k.to_json() for k in self.constraints],
            "free": self.free,
        }


def _names(count: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[i] if i < 26 else f"s{i}" for i in range(count)]


def _normalized(coeffs: dict, bound: int) -> Optional[Constraint]:
    """Divide by the content; ``None`` for a tautology."""
    coeffs = {s: c for s, c in coeffs.items() if c}
    if not coeffs:
        return None if bound > 0 else Constraint((), bound)
    g = 0
    for c in coeffs.values():
        g = gcd(g, c)
    return Constraint(tuple(sorted((s, c // g) for s, c in coeffs.items())), ceil(Fraction(bound, g)))


def parametrize(M: Monoid, S: Stratification) -> Parametrization:
    """Strict inequalities encoding ``lambda(a, tail_i) < 1`` for earlier atoms ``a``.

    ``lambda(a, y) < 1`` holds iff ``v(y) < v(a)`` for some facet normal v
    with ``v(a) > 0``; several normals give a disjunction, which collapses
    to a single inequality when all options share one direction.
    """
    if not M.is_full:
        raise UnsupportedInstance("parametrize needs a full (congruence) monoid")
    if not S.complete:
        raise InputError("parametrize needs a complete stratification")
    layers = S.layers
    order = list(range(1, len(layers))) + [0]
    names = iter(_names(sum(len(H) for H in layers)))
    symbols = {}
    for i in order:
        for a in layers[i]:
            symbols[(i, a)] = Symbol(next(names), a, i + 1)
    F = cone_facets(M)
    raw: list = []
    for i in range(1, len(layers)):
        tail = [symbols[(j, q)] for j in range(i, len(layers)) for q in layers[j]]
        for H in layers[:i]:
            for a in H:
                opts: dict = {}
                taut = False
                for v in F.normals:
                    va = dot(v, a)
                    if va <= 0:
                        continue
                    k = _normalized({s.name: dot(v, s.atom) for s in tail}, va)
                    if k is None:
                        taut = True
                        break
                    prev = opts.get(k.coeffs)
                    if prev is None or k.bound > prev:
                        opts[k.coeffs] = k.bound
                if taut or not opts:
                    continue
                ks = [Constraint(c, b) for c, b in opts.items()]
                raw.append(ks[0] if len(ks) == 1 else AnyOf(tuple(ks)))
    simple = [k for k in raw if isinstance(k, Constraint)]
    kept: list = []
    for idx, k in enumerate(raw):
        if isinstance(k, Constraint):
            dominated = any(
                o.implies(k) and (not k.implies(o) or simple.index(o) < simple.index(k))
                for o in simple if o is not k
            )
            if not dominated and k not in kept:
                kept.append(k)
        else:
            if not any(o.implies(opt) for o in simple for opt in k.options) and k not in kept:
                kept.append(k)
    syms = tuple(symbols[(i, a)] for i in order for a in layers[i])
    return Parametrization(syms, tuple(kept))


def verify_bijection(M: Monoid, P: Parametrization, box_bound: int = 40) -> dict:
    """Compare admissible coefficient tuples with ``M`` inside ``[0, box]^n``."""
    dim = M.dim
    syms = list(P.symbols)
    hits: dict = {}

    def rec(k: int, acc: tuple, vals: dict):
        if k == len(syms):
            if P.admits(vals):
                hits.setdefault(acc, []).append(dict(vals))
            return
        q = syms[k].atom
        c = 0
        cur = acc
        while all(u <= box_bound for u in cur):
            vals[syms[k].name] = c
            rec(k + 1, cur, vals)
            c += 1
            cur = tuple(u + w for u, w in zip(cur, q))
        vals.pop(syms[k].name, None)

    rec(0, tuple([0] * dim), {})
    from .oracle import enum_monoid

    members = enum_monoid(M, box_bound)
    missing = gradlex(members - set(hits))
    outside = gradlex(set(hits) - members)
    dups = {v: t for v, t in hits.items() if len(t) > 1}
    return {
        "bijective": not missing and not outside and not dups,
        "box": box_bound,
        "members": len(members),
        "missing": [list(v) for v in missing],
        "outside": [list(v) for v in outside],
        "duplicates": [
            {"value": list(v), "preimages": [dict(t) for t in ts]} for v, ts in sorted(dups.items())
        ],
    }
