"""Benchmark the frame-decode kernel: compiled extension vs numpy fallback.

Usage: python benchmarks/bench_decode.py [num_msgs] [num_groups] [repeats]
"""

import sys
import time

import numpy as np

from rachsim import _kernels_py
from rachsim.kernels import chain_decode_mask

try:
    from rachsim import _kernels
except ImportError:
    _kernels = None


def bench(impl, gids, keys, ids, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        out = chain_decode_mask(gids, keys, ids, 7.0, impl=impl)
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_sorted(impl, gids_sorted, keys_sorted, repeats):
    """Inner chain kernel only, excluding the shared lexsort."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        impl.decode_sorted_groups(gids_sorted, keys_sorted, 7.0)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 145_000
    n_groups = int(argv[2]) if len(argv) > 2 else 1482 * 54
    repeats = int(argv[3]) if len(argv) > 3 else 7

    rng = np.random.default_rng(0)
    gids = rng.integers(0, n_groups, n).astype(np.int64)
    keys = rng.uniform(70.0, 130.0, n)
    ids = np.arange(n, dtype=np.int64)

    order = np.lexsort((ids, keys, gids))
    gids_s = np.ascontiguousarray(gids[order])
    keys_s = np.ascontiguousarray(keys[order])

    t_py, out_py = bench(_kernels_py, gids, keys, ids, repeats)
    k_py = bench_sorted(_kernels_py, gids_s, keys_s, repeats)
    print(f"numpy fallback : frame {t_py * 1e3:8.2f} ms | kernel {k_py * 1e3:8.2f} ms"
          f"  (decoded {out_py.sum()}/{n})")

    if _kernels is None:
        print("compiled ext   : not built")
        return
    t_cy, out_cy = bench(_kernels, gids, keys, ids, repeats)
    k_cy = bench_sorted(_kernels, gids_s, keys_s, repeats)
    assert np.array_equal(out_py, out_cy), "backends disagree"
    print(f"compiled ext   : frame {t_cy * 1e3:8.2f} ms | kernel {k_cy * 1e3:8.2f} ms"
          "  (identical output)")
    print(f"speedup        : frame {t_py / t_cy:.2f}x | kernel {k_py / k_cy:.2f}x")


if __name__ == "__main__":
    main(sys.argv)
