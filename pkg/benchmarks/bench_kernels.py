"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Prints one row per (kernel, size, backend) with the best wall time and the
speedup of each backend relative to the numpy one.
"""

import argparse
import time

import numpy as np

from tourmanip import Tournament
from tourmanip import kernels
from tourmanip.core import member_mask


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(rng):
    for m in (64, 256, 1024, 2048):
        t = Tournament.random(m, rng)
        member = member_mask(rng.choice(m, size=m // 16, replace=False), m)
        leaves = rng.permutation(m).astype(np.int64)
        beats = np.ascontiguousarray(t.beats_matrix(), dtype=np.uint8)
        yield "cup_dp", m, lambda impl, b=beats, mm=member, lv=leaves: kernels.cup_dp(b, mm, lv, impl=impl)
    for m in (500, 2000, 4000):
        t = Tournament.random(m, rng)
        member = member_mask(rng.choice(m, size=m // 20, replace=False), m)
        p = np.ascontiguousarray(t.points)
        yield "max_points", m, lambda impl, p=p, mm=member: kernels.max_points(p, mm, 1, impl=impl)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled extension not built; only the numpy fallback is timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<11} {'m':>5} {'backend':<8} {'best (ms)':>10} {'vs numpy':>9}")
    for name, m, run in cases(rng):
        base = None
        for impl in ("python", "cython"):
            if impl not in impls:
                continue
            run(impl)  # warm-up
            sec = best_of(lambda: run(impl), args.repeat)
            base = base or sec
            print(f"{name:<11} {m:>5} {impl:<8} {sec * 1e3:>10.2f} {base / sec:>8.1f}x")


if __name__ == "__main__":
    main()
