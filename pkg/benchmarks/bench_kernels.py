"""Benchmark the compiled rref kernel against the pure-Python fallback.

Both backends are imported directly so one process times both on the same
inputs, regardless of which one the package selected at import."""

import argparse
import random
import time

from dequiv import _kernels_py

try:
    from dequiv import _kernels
except ImportError:
    _kernels = None


def random_instance(rng, nrows, ncols, bound):
    nums = [rng.randint(-bound, bound) for _ in range(nrows * ncols)]
    dens = [rng.randint(1, bound) for _ in range(nrows * ncols)]
    return nums, dens


def time_backend(mod, instances, nrows, ncols, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        total = 0.0
        for nums, dens in instances:
            n, d = list(nums), list(dens)
            t0 = time.perf_counter()
            result = mod.rref(n, d, nrows, ncols)
            total += time.perf_counter() - t0
        best = min(best, total)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10x10,20x20,40x40,60x60")
    ap.add_argument("--count", type=int, default=5, help="matrices per size")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--bound", type=int, default=50, help="entry magnitude bound")
    ap.add_argument("--seed", type=int, default=20260823)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("backend available: cython=%s, python=True" % (_kernels is not None))
    print("%-10s %12s %12s %8s" % ("size", "python (s)", "cython (s)", "speedup"))
    for size in args.sizes.split(","):
        nrows, ncols = (int(x) for x in size.split("x"))
        instances = [random_instance(rng, nrows, ncols, args.bound)
                     for _ in range(args.count)]
        t_py, r_py = time_backend(_kernels_py, instances, nrows, ncols, args.repeats)
        if _kernels is None:
            print("%-10s %12.4f %12s %8s" % (size, t_py, "-", "-"))
            continue
        t_cy, r_cy = time_backend(_kernels, instances, nrows, ncols, args.repeats)
        if r_py != r_cy:
            raise SystemExit("backends disagree on %s" % size)
        print("%-10s %12.4f %12.4f %7.2fx" % (size, t_py, t_cy, t_py / t_cy))


if __name__ == "__main__":
    main()
