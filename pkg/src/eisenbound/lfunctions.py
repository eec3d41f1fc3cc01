"""Dirichlet L-functions through the Hurwitz zeta function.

``hurwitz_zeta`` uses Euler-Maclaurin summation. For L-values the pole term
1/(s-1) is split off analytically, which makes L(s, chi) at s = 1 an ordinary
evaluation for every non-principal chi (the pole coefficients sum to zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characters import DirichletCharacter, gauss_sum
from .special_functions import PoleError, bernoulli_numbers, gamma, reciprocal_gamma

_N_MIN = 30
_N_BERNOULLI = 15          # B_2 .. B_30


def _em_terms(s: complex) -> int:
    return _N_MIN + int(abs(s))


@lru_cache(maxsize=8)
def _bernoulli_coeffs() -> np.ndarray:
    b = bernoulli_numbers(2 * _N_BERNOULLI)
    return np.array([float(b[2 * k]) / math.factorial(2 * k)
                     for k in range(1, _N_BERNOULLI + 1)])


def _hurwitz_regular_array(s: complex, a: np.ndarray) -> np.ndarray:
    """zeta(s, a) - 1/(s - 1) for an array of a in (0, 1]."""
    s = complex(s)
    n = _em_terms(s)
    a = np.asarray(a, dtype=float)
    head = np.sum((np.arange(n)[None, :] + a[:, None]) ** (-s), axis=1)
    x = n + a
    logx = np.log(x)
    if s == 1:
        pole_part = -logx + 0j
    else:
        # ((N+a)^{1-s} - 1)/(s-1), stable near s = 1
        pole_part = -np.expm1((1 - s) * logx) / (1 - s)
    tail = 0.5 * x ** (-s)
    # B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    coeffs = _bernoulli_coeffs()
    poch = s
    xpow = x ** (-s - 1)
    inv_x2 = x ** -2.0
    for k, c in enumerate(coeffs, start=1):
        tail = tail + c * poch * xpow
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        xpow = xpow * inv_x2
    return head + pole_part + tail


def hurwitz_zeta(s, a: float) -> complex:
    """Hurwitz zeta zeta(s, a) for s != 1 and 0 < a <= 1."""
    s = complex(s)
    if s == 1:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    return complex(_hurwitz_regular_array(s, np.array([a]))[0] + 1 / (s - 1))


@lru_cache(maxsize=256)
def _hurwitz_table(s: complex, q: int) -> np.ndarray:
    # entry a-1 holds zeta_reg(s, a/q); shared by all characters mod q
    return _hurwitz_regular_array(s, np.arange(1, q + 1) / q)


def dirichlet_l(s, chi: DirichletCharacter) -> complex:
    """L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), continued to all s.

    For primitive chi and Re s < 0 the value is taken from the functional
    equation, since Euler-Maclaurin cancels badly there in double precision.
    """
    s = complex(s)
    q = chi.modulus
    if s.real < 0 and chi.is_primitive and q > 1:
        # L(s) = eps * Lambda(1-s, conj chi) / gamma_factor(s); 1/Gamma gives trivial zeros
        z = (s + chi.parity) / 2
        return (root_number(chi) * completed_lambda(1 - s, chi.conj()).completed
                * (math.pi / q) ** z * reciprocal_gamma(z))
    return _dirichlet_l_hurwitz(s, chi)


def _dirichlet_l_hurwitz(s: complex, chi: DirichletCharacter) -> complex:
    q = chi.modulus
    vals = np.roll(chi.values, -1)            # chi(1), ..., chi(q)
    total = complex(np.dot(vals, _hurwitz_table(s, q)))
    weight = complex(np.sum(vals))
    if abs(weight) > 1e-9:
        if s == 1:
            raise PoleError("L(s, chi) has a pole at s = 1 for principal chi")
        total += weight / (s - 1)
    return q ** (-s) * total


@dataclass(frozen=True)
class CompletedL:
    s: complex
    raw_l: complex
    completed: complex
    gamma_factor: complex


def gamma_factor(s, chi: DirichletCharacter) -> complex:
    """(pi/q)^{-(s+kappa)/2} Gamma((s+kappa)/2)."""
    s = complex(s)
    z = (s + chi.parity) / 2
    return (math.pi / chi.modulus) ** (-z) * gamma(z)


def completed_lambda(s, chi: DirichletCharacter) -> CompletedL:
    """Lambda(s, chi); left of Re s = 0 it is reflected to Lambda(1-s, conj chi).

    At a trivial zero the gamma factor is infinite and raw_l is 0, so the
    completed value is still finite; ``gamma_factor`` is then reported as inf.
    """
    if not chi.is_primitive:
        raise ValueError("completed_lambda requires a primitive character")
    s = complex(s)
    if s.real < 0 and chi.modulus > 1:
        completed = root_number(chi) * completed_lambda(1 - s, chi.conj()).completed
        raw = dirichlet_l(s, chi)
        z = (s + chi.parity) / 2
        rg = reciprocal_gamma(z)
        g = complex("inf") if rg == 0 else (math.pi / chi.modulus) ** (-z) / rg
        return CompletedL(s, raw, completed, g)
    g = gamma_factor(s, chi)
    raw = dirichlet_l(s, chi)
    return CompletedL(s, raw, g * raw, g)


def root_number(chi: DirichletCharacter) -> complex:
    """tau(chi) / (i^kappa sqrt(q))."""
    return gauss_sum(chi).value / (1j ** chi.parity * math.sqrt(chi.modulus))


def functional_equation_defect(s, chi: DirichletCharacter) -> float:
    s = complex(s)
    lhs = completed_lambda(s, chi).completed
    rhs = root_number(chi) * completed_lambda(1 - s, chi.conj()).completed
    return abs(lhs - rhs) / (1 + abs(lhs))


@dataclass(frozen=True)
class LogDerivativeAtOne:
    value: complex          # L'/L(1, chi)
    l_value: complex
    l_prime: complex
    step_agreement: float   # relative gap of the Richardson estimates at h and h/2


def l_log_derivative_at_one(chi: DirichletCharacter, h: float = 1e-3) -> LogDerivativeAtOne:
    """L'/L(1, chi) by Richardson-extrapolated central differences."""
    if chi.modulus < 2 or chi.is_principal:
        raise ValueError("need a non-principal character (q >= 2)")

    def central(step):
        return (dirichlet_l(1 + step, chi) - dirichlet_l(1 - step, chi)) / (2 * step)

    d1, d2, d3 = central(h), central(h / 2), central(h / 4)
    coarse = (4 * d2 - d1) / 3
    lp = (4 * d3 - d2) / 3
    l1 = dirichlet_l(1, chi)
    return LogDerivativeAtOne(lp / l1, l1, lp, abs(coarse - lp) / abs(lp))

