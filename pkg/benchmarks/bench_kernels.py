#!/usr/bin/env python3
"""Benchmark the compiled sweep kernels against the pure-Python fallback.

Runs the two hot routines on acceptance-sized workloads:
  * the staircase-inequality sweep over all partitions of m <= 10 for a
    full denominator grid, and
  * the pairwise-inequality sweep over all partition pairs with
    m + m' <= 12.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from echidx import _kernels_py, kernels
from echidx.partitions import partitions_of
from echidx.verify import theta_grid

try:
    from echidx import _kernels
except ImportError:
    _kernels = None


def bench_ce1(impl, thetas, m_max):
    packed = []
    for m in range(1, m_max + 1):
        packed.append(kernels.pack_partitions(list(partitions_of(m))))
    t0 = time.perf_counter()
    total = 0
    for theta in thetas:
        floors = kernels.floor_table(theta.p, theta.q, m_max)
        prefix = kernels.prefix_sums(floors)
        for flat, offs, _ in packed:
            viol, eq = impl.ce1_sweep(flat, offs, floors, prefix)
            total += len(eq)
            assert not viol
    return time.perf_counter() - t0, total


def bench_cli(impl, thetas, m_max):
    parts = []
    for m in range(0, m_max + 1):
        parts.extend(partitions_of(m))
    flat, offs, ms = kernels.pack_partitions(parts)
    t0 = time.perf_counter()
    pairs = 0
    for theta in thetas:
        rho = [(k * theta.p // theta.q) for k in range(m_max + 1)]
        czp = kernels.cz_prefix_elliptic(theta.p, theta.q, m_max)
        out = impl.cli_sweep(flat, offs, ms, rho, czp, m_max, 0)
        pairs += out[0]
        assert out[1] == out[2] == out[3] == 0
    return time.perf_counter() - t0, pairs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("pure", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled kernel not built; benchmarking the fallback only")

    workloads = [
        ("ce1 sweep (m<=10, q in 11,13,31,97)", bench_ce1, theta_grid([11, 13, 31, 97], 10), 10),
        ("pair sweep (m+m'<=12, q in 13,31,97)", bench_cli, theta_grid([13, 31, 97], 12), 12),
    ]
    for label, fn, thetas, m_max in workloads:
        print(f"\n{label}")
        timings = {}
        for name, impl in backends:
            best = min(fn(impl, thetas, m_max)[0] for _ in range(args.repeat))
            timings[name] = best
            _, count = fn(impl, thetas, m_max)
            print(f"  {name:<9} {best * 1000:9.1f} ms   ({count} instances)")
        if "compiled" in timings and "pure" in timings:
            print(f"  speedup   {timings['pure'] / timings['compiled']:9.1f} x")


if __name__ == "__main__":
    main()
