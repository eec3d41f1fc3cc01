# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; semantics match _kernels_py exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, exp, cos, sin

cnp.import_array()


def prime_sieve(Py_ssize_t n):
    out = np.ones(n + 1, dtype=np.uint8)
    cdef cnp.uint8_t[::1] is_p = out
    cdef Py_ssize_t p, k
    is_p[0] = 0
    if n >= 1:
        is_p[1] = 0
    k = 4
    while k <= n:
        is_p[k] = 0
        k += 2
    # odd primes only need to strike odd multiples
    p = 3
    while p * p <= n:
        if is_p[p]:
            k = p * p
            while k <= n:
                is_p[k] = 0
                k += 2 * p
        p += 2
    return out.view(np.bool_)


def divisor_char_sum_int(long long lo, long long hi, cnp.int64_t[::1] chi_table):
    cdef Py_ssize_t q = chi_table.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(hi - lo + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    cdef long long k, m, v
    for k in range(1, hi + 1):
        v = chi_table[k % q]
        if v == 0:
            continue
        m = ((lo + k - 1) // k) * k
        while m <= hi:
            o[m - lo] += v
            m += k
    return out


def divisor_char_sum_complex(long long lo, long long hi, double complex[::1] chi_table):
    cdef Py_ssize_t q = chi_table.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(hi - lo + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef long long k, m
    cdef double complex v
    for k in range(1, hi + 1):
        v = chi_table[k % q]
        if v == 0:
            continue
        m = ((lo + k - 1) // k) * k
        while m <= hi:
            o[m - lo] = o[m - lo] + v
            m += k
    return out


def bruhat_row_sum(double[::1] x, double y, double complex s, int kappa, double crow,
                   double dscale, double complex[::1] weights, long long dmin, long long dmax):
    cdef Py_ssize_t nx = x.shape[0], P = weights.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(nx, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef long long d
    cdef double ur, ui, r2, logmod, ph, sr = s.real, si = s.imag, logy = log(y), mag
    cdef double complex w, term, acc
    for i in range(nx):
        acc = 0
        for d in range(dmin, dmax + 1):
            w = weights[((d % P) + P) % P]
            if w == 0:
                continue
            ur = crow * x[i] + d * dscale
            ui = crow * y
            r2 = ur * ur + ui * ui
            logmod = logy - log(r2)          # log(y / |u|^2)
            mag = exp(sr * logmod)
            ph = si * logmod
            term = mag * (cos(ph) + 1j * sin(ph))
            if kappa:
                term = term * (ur - 1j * ui) / sqrt(r2)
            acc = acc + w * term
        o[i] = acc
    return out
