"""Compiled vs pure-Python lattice point kernel on dilate counting.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from latval import _kernels
from latval.ehrhart import _count_moment
from latval.exact import random_unimodular
from latval.polytope import Polytope, apply_map, standard_simplex, unit_cube

CASES = [
    ("cube3, k=30", unit_cube(3), 30),
    ("T4, k=20", standard_simplex(4), 20),
    ("skewed cube3, k=12", apply_map(unit_cube(3), random_unimodular(3, seed=5)), 12),
    ("octagon, k=200", Polytope([(0, 1), (1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2)]), 200),
]


def run(backend, P, k, repeat):
    _kernels.use_backend(backend)
    best, result = float("inf"), None
    for _ in range(repeat):
        _count_moment.cache_clear()
        t = time.perf_counter()
        result = _count_moment(P, k)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "compiled" not in _kernels.AVAILABLE:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'case':24} {'points':>10} " + " ".join(f"{b:>10}" for b in _kernels.AVAILABLE))
    for name, P, k in CASES:
        times, results = [], []
        for b in _kernels.AVAILABLE:
            t, r = run(b, P, k, args.repeat)
            times.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), name
        row = " ".join(f"{t * 1e3:9.1f}ms" for t in times)
        speedup = f"  x{times[1] / times[0]:.0f}" if len(times) == 2 else ""
        print(f"{name:24} {results[0][0]:>10} {row}{speedup}")


if __name__ == "__main__":
    main()
