"""Backend selection for the box-enumeration kernels.

The compiled module is used when it imported successfully and the inputs are
small enough for 64-bit arithmetic; everything else goes to the pure-Python
implementation, which works on arbitrary-precision ints.
"""
from __future__ import annotations

import logging

from . import _kernels_py

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

log = logging.getLogger(__name__)

# every intermediate |value| must stay below this
_SAFE = 2**62

_forced: str | None = None


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def set_backend(name: str | None) -> None:
    """Force ``"python"`` or ``"cython"``; ``None`` restores automatic choice."""
    global _forced
    if name not in (None, "python", "cython"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "cython" and _compiled is None:
        raise RuntimeError("compiled kernels are not built")
    _forced = name


def backend() -> str:
    if _forced is not None:
        return _forced
    return "cython" if _compiled is not None else "python"


def _impl(fits: bool):
    if backend() == "cython" and fits:
        return _compiled
    return _kernels_py


def _max_abs(vectors) -> int:
    return max((abs(a) for v in vectors for a in v), default=0)


def congruence_members(coeffs, moduli, bounds) -> list[tuple]:
    coeffs = [tuple(r) for r in coeffs]
    bounds = list(bounds)
    n = len(bounds)
    worst = (_max_abs(coeffs) + 1) * (max(bounds, default=0) + 1) * (n + 1)
    fits = worst < _SAFE and max(moduli, default=0) < _SAFE
    return _impl(fits).congruence_members(coeffs, list(moduli), bounds)


def minimal_nonzero(points) -> list[tuple]:
    points = list(points)
    return _impl(_max_abs(points) < _SAFE).minimal_nonzero(points)


def not_dominating(points, base) -> list[tuple]:
    points, base = list(points), list(base)
    fits = max(_max_abs(points), _max_abs(base)) < _SAFE
    return _impl(fits).not_dominating(points, base)
