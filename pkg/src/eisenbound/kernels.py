"""Kernel selection: compiled extension when available, numpy otherwise.

Set EISENBOUND_PURE_PYTHON=1 to force the numpy fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("EISENBOUND_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def prime_sieve(n):
    return _impl.prime_sieve(int(n))


def divisor_char_sum_int(lo, hi, chi_table):
    return _impl.divisor_char_sum_int(int(lo), int(hi),
                                      np.ascontiguousarray(chi_table, dtype=np.int64))


def divisor_char_sum_complex(lo, hi, chi_table):
    return _impl.divisor_char_sum_complex(int(lo), int(hi),
                                          np.ascontiguousarray(chi_table, dtype=complex))


def bruhat_row_sum(x, y, s, kappa, crow, dscale, weights, dmin, dmax):
    return _impl.bruhat_row_sum(np.ascontiguousarray(x, dtype=float), float(y), complex(s),
                                int(kappa), float(crow), float(dscale),
                                np.ascontiguousarray(weights, dtype=complex),
                                int(dmin), int(dmax))


__all__ = ["BACKEND", "prime_sieve", "divisor_char_sum_int",
           "divisor_char_sum_complex", "bruhat_row_sum"]
