"""Block monoids of zero-sum sequences over a subset of a finitely generated abelian group."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

from .arith import ivec
from .errors import InputError, UnsupportedInstance
from .hilbert import hilbert_basis
from .monoid import CongruenceSystem, Monoid, equality_rays

MAX_ELEMENTS = 12


@dataclass(frozen=True)
class GroupSpec:
    """``G0`` inside ``Z_{d_1} x ... x Z_{d_r} x Z^k``; torsion parts reduced."""

    moduli: tuple
    free_rank: int
    elements: tuple

    def __post_init__(self):
        mods = tuple(self.moduli)
        for d in mods:
            if isinstance(d, bool) or not isinstance(d, int) or d < 2:
                raise InputError(f"torsion modulus must be an integer >= 2, got {d!r}")
        if isinstance(self.free_rank, bool) or not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise InputError("free rank must be a nonnegative integer")
        width = len(mods) + self.free_rank
        if width == 0:
            raise InputError("the group must have at least one component")
        elems = []
        for g in self.elements:
            g = ivec(g)
            if len(g) != width:
                raise InputError(f"element {list(g)} has {len(g)} components, expected {width}")
            g = tuple(c % d for c, d in zip(g, mods)) + g[len(mods):]
            if g in elems:
                raise InputError(f"duplicate element {list(g)}")
            elems.append(g)
        if not elems:
            raise InputError("G0 must be nonempty")
        object.__setattr__(self, "moduli", mods)
        object.__setattr__(self, "elements", tuple(elems))

    @classmethod
    def from_json(cls, desc: Any) -> "GroupSpec":
        try:
            return cls(tuple(desc["moduli"]), desc.get("free_rank", 0), tuple(tuple(e) for e in desc["elements"]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed group description: {exc!r}") from exc


@dataclass(frozen=True)
class ZeroSumSequence:
    multiplicities: tuple

    def support(self) -> frozenset:
        return frozenset(i for i, m in enumerate(self.multiplicities) if m)


def block_to_congruence(G: GroupSpec) -> CongruenceSystem:
    """One congruence row per torsion component, one equality per free component."""
    r = len(G.moduli)
    rows = [(tuple(g[i] for g in G.elements), d) for i, d in enumerate(G.moduli)]
    rows += [(tuple(g[r + k] for g in G.elements), 0) for k in range(G.free_rank)]
    return CongruenceSystem(len(G.elements), tuple(rows))


def block_monoid(G: GroupSpec) -> Monoid:
    return Monoid(block_to_congruence(G))


def _restricted(system: CongruenceSystem, T: Sequence[int]) -> CongruenceSystem:
    rows = tuple((tuple(a[j] for j in T), d) for a, d in system.rows)
    return CongruenceSystem(len(T), rows)


def _has_nonzero_solution(system: CongruenceSystem) -> bool:
    # a nonnegative rational kernel vector of the equalities, scaled by the
    # moduli, is a nonzero zero-sum sequence; the converse is immediate
    return bool(equality_rays(system))


def is_elementary(G: GroupSpec, a: ZeroSumSequence | Sequence[int]) -> bool:
    """True iff no zero-sum sequence has support strictly inside supp(a)."""
    if len(G.elements) > MAX_ELEMENTS:
        raise UnsupportedInstance(f"support search is capped at |G0| <= {MAX_ELEMENTS}")
    if not isinstance(a, ZeroSumSequence):
        a = ZeroSumSequence(ivec(a))
    x = a.multiplicities
    if len(x) != len(G.elements) or any(m < 0 for m in x):
        raise InputError("multiplicities must be nonnegative, one per element of G0")
    system = block_to_congruence(G)
    if not system.satisfied(x):
        raise InputError(f"{list(x)} is not a zero-sum sequence")
    supp = sorted(a.support())
    if not supp:
        raise InputError("the empty sequence is not an atom")
    M = Monoid(system)
    if tuple(x) not in hilbert_basis(M).atoms:
        raise InputError(f"{list(x)} is not an atom of the block monoid")
    # a solution with smaller support is also a solution on some maximal proper subset
    for T in combinations(supp, len(supp) - 1):
        if T and _has_nonzero_solution(_restricted(system, T)):
            return False
    return True
