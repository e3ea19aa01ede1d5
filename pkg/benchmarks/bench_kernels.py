#!/usr/bin/env python3
"""Benchmark the compiled cycle kernels against the pure-Python fallback.

Times the two hot operations behind compatibility-graph building and
blocked-set counting:

  * cycle_length_mask on random degree-<=4 graphs
  * row_union_cycle_masks over all canonical paths of K_n (one full row
    per path, i.e. the inner loop of a pairwise relation build)

Run:  python benchmarks/bench_kernels.py [--n 6] [--repeat 3]
"""

import argparse
import random
import time

from hamdiff._kernels import pure
from hamdiff.core import enumerate_paths
from hamdiff.relations import paths_matrix

try:
    from hamdiff._kernels import _fast
except ImportError:
    _fast = None


def random_graphs(count, n, seed=42):
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        adj = [0] * n
        degree = [0] * n
        for _ in range(2 * n):
            u, v = rng.sample(range(n), 2)
            if degree[u] >= 4 or degree[v] >= 4 or adj[u] >> v & 1:
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            degree[u] += 1
            degree[v] += 1
        graphs.append(adj)
    return graphs


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_masks(impl, graphs, n):
    def run():
        for adj in graphs:
            impl.cycle_length_mask(n, adj)
    return run


def bench_rows(impl, mat):
    rows = mat.shape[0]
    def run():
        for i in range(rows):
            impl.row_union_cycle_masks(mat, i, 0, 0)
    return run


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=6,
                        help="path order for the pairwise-row benchmark")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--graphs", type=int, default=2000,
                        help="random graphs for the mask benchmark")
    args = parser.parse_args()

    impls = [("pure", pure)]
    if _fast is not None:
        impls.append(("cython", _fast))
    else:
        print("compiled kernel not built; timing the fallback only")

    graphs = random_graphs(args.graphs, 9)
    mat = paths_matrix(enumerate_paths(args.n))
    pair_count = mat.shape[0] ** 2

    print(f"{'benchmark':<34}" + "".join(f"{name:>12}" for name, _ in impls)
          + ("     speedup" if len(impls) == 2 else ""))
    rows = [
        (f"cycle_length_mask x{args.graphs} (n=9)",
         [bench_masks(impl, graphs, 9) for _, impl in impls]),
        (f"pairwise rows n={args.n} ({pair_count} unions)",
         [bench_rows(impl, mat) for _, impl in impls]),
    ]
    for label, runners in rows:
        times = [best_of(args.repeat, run) for run in runners]
        cells = "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        speedup = f"{times[0] / times[1]:>10.1f}x" if len(times) == 2 else ""
        print(f"{label:<34}{cells}  {speedup}")


if __name__ == "__main__":
    main()
