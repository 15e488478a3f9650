"""Compiled vs pure-Python kernel timings.

Usage: python benchmarks/bench_kernels.py [--sizes 33,100,200,400] [--repeat 3]

Both backends are imported directly, so this runs regardless of which one
the package selected. The eigensolver is only timed up to 100 vertices;
cyclic Jacobi is O(n^3) per sweep and the pure interpreter makes larger
sizes tedious without telling you anything new.
"""

import argparse
import random
import time

from gridres import _kernels_py
from gridres.graph import GraphView

try:
    from gridres import _kernels as compiled
except ImportError:
    compiled = None

JACOBI_MAX_N = 100


def connected_graph(rng, n, extra_ratio=0.25):
    """Random spanning tree plus a sprinkle of chords."""
    edges = [(rng.randrange(1, i + 1), i + 1) for i in range(1, n)]
    extra = int(n * extra_ratio)
    have = {tuple(sorted(e)) for e in edges}
    while extra > 0:
        a, b = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
        key = (min(a, b), max(a, b))
        if a != b and key not in have:
            have.add(key)
            edges.append(key)
            extra -= 1
    return GraphView.build(range(1, n + 1), edges)


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="33,100,200,400")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if compiled is None:
        print("compiled extension not available; showing pure-python only")

    rng = random.Random(0)
    rows = []
    for n in sizes:
        g = connected_graph(rng, n)
        indptr, indices = g.csr
        lap = g.laplacian()
        kernels = [("distance_stats", (g.n, indptr, indices)),
                   ("betweenness", (g.n, indptr, indices))]
        if n <= JACOBI_MAX_N:
            kernels.append(("jacobi_eigh", (lap,)))
        for name, call_args in kernels:
            attr = "betweenness_counts" if name == "betweenness" else name
            pure = best_of(args.repeat, getattr(_kernels_py, attr), *call_args)
            if compiled is not None:
                fast = best_of(args.repeat, getattr(compiled, attr), *call_args)
                rows.append((n, name, pure, fast, pure / fast))
            else:
                rows.append((n, name, pure, None, None))

    header = f"{'n':>5}  {'kernel':<16}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n, name, pure, fast, ratio in rows:
        if fast is None:
            print(f"{n:>5}  {name:<16}{pure * 1e3:>12.3f}{'-':>15}{'-':>9}")
        else:
            print(f"{n:>5}  {name:<16}{pure * 1e3:>12.3f}{fast * 1e3:>15.3f}{ratio:>8.1f}x")


if __name__ == "__main__":
    main()
