"""Time the compiled and pure-Python kernels on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--sizes 2^12,2^16] [--repeat 3]
"""

import argparse
import time

import numpy as np

from lzrl.bitcodec import Codec, code_length_table
from lzrl.cli import parse_n_list
from lzrl.generators import gen_gray_binary
from lzrl.kernels import available_backends


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def greedy_job(mod, arr):
    def run():
        sa = mod.suffix_array(arr, int(arr.max()) + 1)
        rank, lcp = mod.lcp_array(arr, sa)
        prev_src, next_src = mod.smaller_neighbours(sa)
        mod.greedy_factorize(arr, sa, rank, lcp, prev_src, next_src, False)

    return run


def optimal_job(mod, arr):
    n = len(arr)
    tables = [code_length_table(Codec.GAMMA, n + 1) for _ in range(3)]
    return lambda: mod.optimal_parse(arr, *tables, False, 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=parse_n_list, default=[2 ** 12, 2 ** 14, 2 ** 16])
    ap.add_argument("--opt-sizes", type=parse_n_list, default=[500, 2000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the pure-Python backend is timed")
    print(f"{'task':<10}{'n':>10}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")

    def row(task, n, make):
        times = {name: best_of(make(mod), args.repeat) for name, mod in backends.items()}
        speed = times["python"] / times["cython"] if "cython" in times and times["cython"] > 0 else float("nan")
        print(f"{task:<10}{n:>10}" + "".join(f"{t:>11.4f}s" for t in times.values()) + f"{speed:>9.1f}x")

    for n in args.sizes:
        arr = np.asarray(gen_gray_binary(n, max(2, n.bit_length() - 1)).text.letters, dtype=np.int32)
        row("greedy", n, lambda mod: greedy_job(mod, arr))
    rng = np.random.default_rng(0)
    for n in args.opt_sizes:
        arr = rng.integers(0, 4, n).astype(np.int32)
        row("optimal", n, lambda mod: optimal_job(mod, arr))


if __name__ == "__main__":
    main()
