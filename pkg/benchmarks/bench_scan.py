"""Time the compiled residue sieve against the numpy one on census-like work.

    python benchmarks/bench_scan.py [--pairs N] [--ymax N] [--repeat N]
"""

import argparse
import random
import time

from quarticpell import squarescan
from quarticpell.census import census_pairs


def run(backend, work, ymax):
    t = time.perf_counter()
    hits = [squarescan.quartic_hits(a * a + b * b, b * b, 2, ymax, backend) for a, b in work]
    return time.perf_counter() - t, hits


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=300)
    ap.add_argument("--ymax", type=int, default=200000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    work = random.Random(args.seed).sample(census_pairs(181700), args.pairs)
    tests = args.pairs * (args.ymax - 1)
    backends = ["python"]
    try:
        from quarticpell import _scan  # noqa: F401
        backends.insert(0, "cython")
    except ImportError:
        print("compiled sieve not built; timing the numpy one only")
    results = {}
    for be in backends:
        best = min(run(be, work, args.ymax)[0] for _ in range(args.repeat))
        results[be] = best
        print(f"{be:7s} {best:8.3f} s  {best / tests * 1e9:6.2f} ns per Y")
    if len(results) == 2:
        same = run("cython", work, args.ymax)[1] == run("python", work, args.ymax)[1]
        print(f"speedup {results['python'] / results['cython']:.2f}x, identical hits: {same}")


if __name__ == "__main__":
    main()
