"""Pure-Python versions of the box-enumeration kernels.

These mirror ``_kernels.pyx`` function for function; ``stratamon.kernels``
picks whichever is available at import time.
"""
from itertools import product


def congruence_members(coeffs, moduli, bounds):
    """All x in prod([0, b_j]) with ``coeffs[i] . x == 0 (mod moduli[i])``.

    ``moduli[i] == 0`` encodes an equality row.  Output is in lexicographic
    order of the box.
    """
    rows = list(zip(coeffs, moduli))
    out = []
    for x in product(*(range(b + 1) for b in bounds)):
        for a, d in rows:
            s = 0
            for c, v in zip(a, x):
                s += c * v
            if (s % d if d else s) != 0:
                break
        else:
            out.append(x)
    return out


def minimal_nonzero(points):
    """Componentwise-minimal nonzero points.

    ``points`` must be sorted by total degree so that every point is seen
    after all points strictly below it.
    """
    kept = []
    for x in points:
        if not any(x):
            continue
        for a in kept:
            for u, v in zip(a, x):
                if u > v:
                    break
            else:
                break
        else:
            kept.append(x)
    return kept


def not_dominating(points, base):
    """Points y such that no element of ``base`` is componentwise <= y."""
    out = []
    for y in points:
        for a in base:
            for u, v in zip(a, y):
                if u > v:
                    break
            else:
                break
        else:
            out.append(y)
    return out
