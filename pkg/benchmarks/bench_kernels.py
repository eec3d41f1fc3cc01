"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from eisenbound import _kernels_py
from eisenbound.characters import enumerate_primitive_characters

try:
    from eisenbound import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    chi = enumerate_primitive_characters(7)[0]
    re_chi = [c for c in enumerate_primitive_characters(5) if c.order == 2][0]
    w = np.ones(7, dtype=complex)
    x = np.linspace(0, 1, 64)
    return [
        ("prime_sieve(2e7)", lambda m: m.prime_sieve(2 * 10 ** 7)),
        ("divisor_char_sum_int(1e6..2e6)",
         lambda m: m.divisor_char_sum_int(10 ** 6, 2 * 10 ** 6, re_chi.real_values)),
        ("divisor_char_sum_complex(1e6..2e6)",
         lambda m: m.divisor_char_sum_complex(10 ** 6, 2 * 10 ** 6, chi.values)),
        ("bruhat_row_sum(64 x, 2e4 d)",
         lambda m: m.bruhat_row_sum(x, 0.8, 3 + 0j, 0, 7.0, 1.0, w, -20000, 20000)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':40s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases():
        tp, outp = best_of(lambda: fn(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:40s} {tp:10.4f}")
            continue
        tc, outc = best_of(lambda: fn(_kernels), args.repeat)
        assert np.allclose(outp, outc), name
        print(f"{name:40s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
