#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot loops (inverse tables + depth-recursive harmonic sums,
the incremental binomial sum, the Bernoulli triangle) on both backends at
a few prime sizes and prints a timing table with speedups.  Results are
asserted equal before timing is reported.

Usage: python3 benchmarks/bench_kernels.py [--primes 101,1009,10007] [--repeat 3]
"""

from __future__ import annotations

import argparse
import sys
import time

from supercong.kernels import _ckernels, pykernels

DIGITS = 6


def _bench(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _cases(p: int):
    m = p**DIGITS
    n = p - 1
    half = (p - 1) // 2

    def make(backend):
        inv = backend.inverse_table(n, p, m)

        def run_mhs():
            return backend.mhs_sum((3, 1), half, p, m, inv)

        def run_weighted():
            return backend.weighted_sum(
                2, False, None, (("odd", 1, 1),), half, p, m, inv
            )

        def run_s_sum():
            return backend.s_sum((m + 1) // 2, n, p, m, inv)

        def run_central():
            cinv = pow(16, -1, m)
            return backend.central_sum(1, n, cinv, p, m, inv)

        def run_bernoulli():
            return backend.bernoulli_scaled(min(2 * p - 4, 2000), p, p ** (DIGITS + 1))

        def run_invtab():
            return backend.inverse_table(n, p, m)

        return {
            "inverse_table": run_invtab,
            "mhs_sum(3,1)": run_mhs,
            "weighted_sum": run_weighted,
            "s_sum": run_s_sum,
            "central_sum": run_central,
            "bernoulli": run_bernoulli,
        }

    return make


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="101,1009,10007")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    primes = [int(s) for s in args.primes.split(",")]

    if _ckernels is None:
        print("compiled backend not available; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'p':>7}  {'kernel':16}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for p in primes:
        make = _cases(p)
        py_cases = make(pykernels)
        c_cases = make(_ckernels)
        for name in py_cases:
            t_py, r_py = _bench(py_cases[name], args.repeat)
            t_c, r_c = _bench(c_cases[name], args.repeat)
            assert r_py == r_c, f"backend mismatch in {name} at p={p}"
            print(
                f"{p:>7}  {name:16}  {t_py * 1e3:>8.2f}ms  {t_c * 1e3:>8.2f}ms"
                f"  {t_py / t_c:>7.1f}x"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
