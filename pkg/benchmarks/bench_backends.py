"""Time each kernel in its numba and numpy flavours.

    python benchmarks/bench_backends.py [--repeat 5]

Numba timings exclude compilation (one warm-up call first). Both flavours are
called directly, so the ``TENRANK_NO_NUMBA`` flag does not matter here.
"""

import argparse
import time

import numpy as np

from tenrank import kernels
from tenrank._accel import NUMBA_AVAILABLE


def best_of(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def cases(rng):
    yield "khatri_rao 200x30 (.) 200x30", "khatri_rao", (rng.standard_normal((200, 30)), rng.standard_normal((200, 30)))
    yield "khatri_rao 2000x8 (.) 50x8", "khatri_rao", (rng.standard_normal((2000, 8)), rng.standard_normal((50, 8)))
    for dims, rank in (((20, 20, 20), 10), ((6, 6, 6, 6, 6), 30), ((8,) * 6, 5)):
        factors = [rng.standard_normal((d, rank)) for d in dims]
        label = "x".join(map(str, dims))
        yield f"cpd_full {label} R={rank}", "cpd_full", (np.ones(rank), factors)
    for order in (12, 18, 22):
        dims = rng.integers(2, 10, size=order).astype(np.int64)
        yield f"best_split N={order}", "best_split", (dims,)
    for order, hi in ((10, 20), (30, 500), (60, 2000)):
        vals = rng.integers(1, hi, size=order).astype(np.int64)
        yield f"sum_partition N={order} dims<{hi}", "sum_partition", (vals,)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if not NUMBA_AVAILABLE:
        print("numba is not installed; the loop flavour runs as plain Python")
    rng = np.random.default_rng(args.seed)
    print(f"{'case':<36} {'numba [ms]':>11} {'numpy [ms]':>11} {'speedup':>8}")
    for label, name, call_args in cases(rng):
        loop, vec = kernels.VARIANTS[name]
        t_loop = best_of(loop, call_args, args.repeat)
        t_vec = best_of(vec, call_args, args.repeat)
        print(f"{label:<36} {t_loop * 1e3:>11.3f} {t_vec * 1e3:>11.3f} {t_vec / t_loop:>7.1f}x")


if __name__ == "__main__":
    main()
