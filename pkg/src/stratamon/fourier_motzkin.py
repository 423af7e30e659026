"""Exact cone membership by Fourier-Motzkin elimination.

Decides whether ``x = sum(l_j * v_j)`` has a solution with all ``l_j >= 0``.
Equalities are eliminated first by Gaussian elimination; the remaining
inequality system is projected variable by variable, with Chernikov's rule
discarding combinations that are provably redundant.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arith import row_echelon


def _normalize(coeffs: Sequence[Fraction], const: Fraction) -> tuple:
    den = 1
    for a in (*coeffs, const):
        den = lcm(den, Fraction(a).denominator)
    ints = [int(a * den) for a in coeffs]
    c = int(const * den)
    g = 0
    for a in (*ints, c):
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
        c //= g
    return tuple(ints), c


def cone_contains(vectors: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """True iff ``x`` lies in the rational cone spanned by ``vectors``."""
    m = len(vectors)
    n = len(x)
    if m == 0:
        return not any(x)
    aug = [[v[i] for v in vectors] + [x[i]] for i in range(n)]
    red, piv = row_echelon(aug)
    if m in piv:
        return False
    free = [j for j in range(m) if j not in piv]
    k = len(free)
    # each constraint reads const + coeffs . l_free >= 0
    system: dict[tuple, frozenset] = {}

    def put(coeffs, const, hist) -> bool:
        key = _normalize(coeffs, const)
        if not any(key[0]):
            return key[1] >= 0
        old = system.get(key)
        if old is None or len(hist) < len(old):
            system[key] = hist
        return True

    for t in range(k):
        put([Fraction(int(t == s)) for s in range(k)], Fraction(0), frozenset([t]))
    for t, (row, p) in enumerate(zip(red, piv)):
        if not put([-row[f] for f in free], row[m], frozenset([k + t])):
            return False

    eliminated = 0
    remaining = list(range(k))
    while remaining:
        def cost(var):
            P = sum(1 for c in system if c[0][var] > 0)
            N = sum(1 for c in system if c[0][var] < 0)
            return P * N - P - N

        var = min(remaining, key=cost)
        remaining.remove(var)
        eliminated += 1
        pos = [(c, h) for c, h in system.items() if c[0][var] > 0]
        neg = [(c, h) for c, h in system.items() if c[0][var] < 0]
        rest = {c: h for c, h in system.items() if c[0][var] == 0}
        system = rest
        for (pc, pb), ph in pos:
            for (nc, nb), nh in neg:
                hist = ph | nh
                if len(hist) > eliminated + 1:
                    continue
                a, b = pc[var], -nc[var]
                coeffs = [b * u + a * w for u, w in zip(pc, nc)]
                if not put(coeffs, b * pb + a * nb, hist):
                    return False
    return True
