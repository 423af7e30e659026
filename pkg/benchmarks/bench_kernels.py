"""Time the box-enumeration kernels under each available backend.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is run once per backend to check that the outputs agree, then
timed with ``timeit``.  The end-to-end rows clear the monoid caches between
runs so the Hilbert basis is recomputed every time.
"""
import argparse
import timeit

from stratamon import Monoid, apery, hilbert_basis
from stratamon import kernels

WORKLOADS = {
    "members 2d mod 31, box 60": lambda: kernels.congruence_members([(3, 7)], [31], [60, 60]),
    "members 3d mod 11, box 30": lambda: kernels.congruence_members([(4, 5, 8)], [11], [30, 30, 30]),
    "members 4d mod 5, box 12": lambda: kernels.congruence_members([(1, 2, 3, 4)], [5], [12] * 4),
    "minimal_nonzero 3d mod 11": lambda: kernels.minimal_nonzero(
        kernels.congruence_members([(4, 5, 8)], [11], [11, 11, 11])
    ),
    "not_dominating 3d mod 11": lambda: kernels.not_dominating(
        kernels.congruence_members([(4, 5, 8)], [11], [21, 21, 21]), [(11, 0, 0), (0, 11, 0), (0, 0, 11)]
    ),
}


def _fresh(system):
    return Monoid.congruence(system[0], system[1])


END_TO_END = {
    "hilbert basis 3d mod 13": lambda: hilbert_basis(_fresh((3, [((3, 5, 11), 13)]))),
    "apery set 3d mod 11": lambda: apery(
        _fresh((3, [((4, 5, 8), 11)])), [(11, 0, 0), (0, 11, 0), (0, 0, 11)]
    ),
}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernels not built; only the Python timings are shown")

    rows = []
    for label, fn in {**WORKLOADS, **END_TO_END}.items():
        results, times = {}, {}
        for b in backends:
            kernels.set_backend(b)
            results[b] = fn()
            times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        kernels.set_backend(None)
        if label in WORKLOADS and len({tuple(r) for r in results.values()}) != 1:
            raise SystemExit(f"{label}: backends disagree")
        rows.append((label, times))

    width = max(len(r[0]) for r in rows)
    head = f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) > 1:
        head += f"  {'speedup':>8}"
    print(head)
    for label, times in rows:
        line = f"{label:<{width}}  " + "  ".join(f"{times[b] * 1e3:>8.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"  {times['python'] / times['cython']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
