"""Time the modular rank kernel: numba against numpy.

    python3 benchmarks/bench_kernels.py [--sizes 40,80,160] [--repeat 5]

Reports the best wall time per backend and checks that both backends return
the same rank.  The first numba call (compilation) is excluded.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from perisplit import kernels

P = kernels.PRIMES[0]


def matrix(size: int, rank: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    left = rng.integers(0, P, size=(size, rank), dtype=np.int64)
    right = rng.integers(0, P, size=(rank, size), dtype=np.int64)
    out = np.zeros((size, size), dtype=np.int64)
    # accumulate mod P column by column to stay inside int64
    for k in range(rank):
        out = (out + (left[:, k : k + 1] * right[k : k + 1, :]) % P) % P
    return out


def best_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="40,80,160")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    if kernels.HAVE_NUMBA:
        kernels.rank_mod_p(matrix(4, 2, 0), P, "numba")
    print(f"{'size':>6} {'rank':>6} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + f" {'speedup':>8}")
    for size in (int(s) for s in args.sizes.split(",")):
        a = matrix(size, size * 3 // 4, args.seed)
        ranks = {b: kernels.rank_mod_p(a, P, b) for b in backends}
        if len(set(ranks.values())) != 1:
            raise SystemExit(f"backends disagree at size {size}: {ranks}")
        t = {b: best_time(lambda b=b: kernels.rank_mod_p(a, P, b), args.repeat) for b in backends}
        speed = f"{t['numpy'] / t['numba']:8.1f}" if "numba" in t else f"{'n/a':>8}"
        print(f"{size:>6} {ranks['numpy']:>6} " + " ".join(f"{t[b]:12.5f}" for b in backends) + f" {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
