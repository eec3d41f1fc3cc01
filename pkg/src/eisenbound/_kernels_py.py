"""Pure numpy versions of the hot kernels (reference semantics)."""

from __future__ import annotations

import numpy as np


def prime_sieve(n: int) -> np.ndarray:
    """Boolean array of length n+1 with True at primes."""
    is_p = np.ones(n + 1, dtype=bool)
    is_p[: min(2, n + 1)] = False
    for p in range(2, int(n ** 0.5) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return is_p


def divisor_char_sum_int(lo: int, hi: int, chi_table: np.ndarray) -> np.ndarray:
    """sum_{k | m} chi(k) for lo <= m <= hi, chi given as int64 table mod q."""
    q = len(chi_table)
    out = np.zeros(hi - lo + 1, dtype=np.int64)
    for k in range(1, hi + 1):
        v = chi_table[k % q]
        if v:
            start = -(-lo // k) * k
            out[start - lo :: k] += v
    return out


def divisor_char_sum_complex(lo: int, hi: int, chi_table: np.ndarray) -> np.ndarray:
    q = len(chi_table)
    out = np.zeros(hi - lo + 1, dtype=np.complex128)
    for k in range(1, hi + 1):
        v = chi_table[k % q]
        if v != 0:
            start = -(-lo // k) * k
            out[start - lo :: k] += v
    return out


def bruhat_row_sum(x: np.ndarray, y: float, s: complex, kappa: int, crow: float,
                   dscale: float, weights: np.ndarray, dmin: int, dmax: int) -> np.ndarray:
    """sum_d weights[d mod P] j(u)^{-kappa} y^s |u|^{-2s}, u = crow (x + i y) + d dscale.

    Evaluated for every x in the array; d runs over dmin..dmax.
    """
    x = np.asarray(x, dtype=float)
    d = np.arange(dmin, dmax + 1)
    w = weights[d % len(weights)]
    keep = w != 0
    d, w = d[keep], w[keep]
    u = crow * (x[:, None] + 1j * y) + (d * dscale)[None, :]
    r = np.abs(u)
    term = np.exp(s * (np.log(y) - 2.0 * np.log(r)))
    if kappa:
        term = term * (np.conj(u) / r) ** kappa
    return term @ w
