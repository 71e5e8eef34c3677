"""Compare the compiled and numpy kernels, alone and inside a full solve.

    python3 benchmarks/bench_kernels.py [--sizes 16 64 128] [--repeat 5]
"""
import argparse
import random
import statistics
import time
from fractions import Fraction

import numpy as np

from weaklin import kernels
from weaklin.lattice import GODEL, LUKASIEWICZ
from weaklin.relation import FuzzyRelation
from weaklin.solver import WeaklyLinearSystem, solve_greatest

KERNELS = ("compose", "right_residual", "left_residual")


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernels(sizes, repeat, impls):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'tnorm':<8}{'n':>6}" + "".join(f"{name:>14}" for name in impls)
          + f"{'speedup':>10}")
    for tnorm, label, top in ((kernels.TNORM_MIN, "min", 10), (kernels.TNORM_LUKASIEWICZ, "luk", 100)):
        for n in sizes:
            X = rng.integers(0, top + 1, (n, n), dtype=np.int64)
            Y = rng.integers(0, top + 1, (n, n), dtype=np.int64)
            for k in KERNELS:
                row = {}
                for name, mod in impls.items():
                    fn = getattr(mod, k)
                    row[name] = best_of(lambda: fn(X, Y, tnorm, top), repeat)
                cells = "".join(f"{row[name] * 1e3:>12.3f}ms" for name in impls)
                speed = ""
                if "cython" in row and "python" in row:
                    speed = f"{row['python'] / row['cython']:>9.1f}x"
                print(f"{k:<16}{label:<8}{n:>6}{cells}{speed}")


def random_system(n, m, lattice, rng, variant=3):
    vals = [Fraction(k, 10) for k in range(11)]

    def mat(r, c):
        return FuzzyRelation([[rng.choice(vals) for _ in range(c)] for _ in range(r)], lattice)

    return WeaklyLinearSystem.heterogeneous(variant, [mat(n, n), mat(n, n)], [mat(m, m), mat(m, m)])


def bench_solve(sizes, repeat, impls):
    rng = random.Random(1)
    print()
    print(f"{'solve wl2-3':<24}{'n':>6}" + "".join(f"{name:>14}" for name in impls) + f"{'speedup':>10}")
    for lattice in (GODEL, LUKASIEWICZ):
        for n in sizes:
            system = random_system(n, n, lattice, rng)
            row = {}
            for name in impls:
                with kernels.use_backend(name):
                    row[name] = best_of(lambda: solve_greatest(system), repeat)
            cells = "".join(f"{row[name] * 1e3:>12.3f}ms" for name in impls)
            speed = ""
            if "cython" in row and "python" in row:
                speed = f"{row['python'] / row['cython']:>9.1f}x"
            print(f"{lattice.name:<24}{n:>6}{cells}{speed}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 64, 128])
    ap.add_argument("--solve-sizes", type=int, nargs="+", default=[16, 32, 64])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled kernels not built; timing the numpy fallback only")
    bench_kernels(args.sizes, args.repeat, impls)
    bench_solve(args.solve_sizes, args.repeat, impls)


if __name__ == "__main__":
    main()
