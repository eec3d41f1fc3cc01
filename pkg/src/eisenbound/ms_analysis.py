"""Maass-Selberg right-hand sides and the strip integral at s = 1/2.

The strip integral

    I(chi, 1/T, T) = int_{1/T}^inf int_0^1 |Lambda^T E_inf(z, 1/2, chi)|^2 dx dy / y^2

is evaluated by Parseval in x. For 1/T < y the truncated series has the same
non-constant modes as E and constant term y^{1/2} on (1/T, T] only, so

    I = 2 log T + sum_m |rho(m)|^2 int_{1/T}^inf W(4 pi |m| y)^2 dy / y^2.

With |tau| = sqrt(q) the mode weights reduce to
    kappa = 0:  4 |sigma_0(m)|^2 F(2 pi m / T) / (q |L(1)|^2)  for each sign of m,
                F(x) = int_x^inf K_0(u)^2 du / u;
    kappa = 1:  4 pi^2 |sigma_0(m)|^2 E_1(4 pi m / T) / (q |L(1)|^2),  m >= 1 only.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .characters import DirichletCharacter, character_id
from .eisenstein import scattering_log_derivative, scattering_phi
from .lfunctions import dirichlet_l
from .quadrature import gk15_panels
from .sieve import sigma0_table, restricted_sigma_sum
from .special_functions import bessel_k_array, exp_integral_e1


class PoleError(ZeroDivisionError):
    pass


class TailNotCertified(RuntimeError):
    def __init__(self, message, partial, bound):
        super().__init__(message)
        self.partial = partial
        self.bound = bound


@dataclass(frozen=True)
class StripIntegral:
    T: float
    eta: float
    constant_part: float
    mode_contributions: tuple        # ((m, contribution), ...) in ascending m
    tail_bound: float
    total: float

    @property
    def mode_part(self) -> float:
        return self.total - self.constant_part


def _k0_squared_over_u(u):
    k, _ = bessel_k_array(0, u)
    return k * k / u


def _k0_sq_tail_bound(x: float) -> float:
    """int_x^inf K_0(u)^2 du/u <= pi e^{-2x} / (4 x^2), from K_0(u) <= sqrt(pi/2u) e^{-u}."""
    return math.pi * math.exp(-2 * x) / (4 * x * x)


def k0_square_integrals(xs: np.ndarray, tol: float = 1e-14):
    """F(x_k) - F(x_end) for increasing nodes x_k, with x_end = xs[-1].

    Each gap is split into GK15 panels, refined until the summed |K15 - G7|
    estimate is below tol. Returns (cumulative integrals, error estimate).
    """
    xs = np.asarray(xs, dtype=float)
    sub = 4
    while True:
        edges = np.concatenate([np.linspace(a, b, sub + 1)[:-1] for a, b in zip(xs[:-1], xs[1:])]
                               + [xs[-1:]])
        vals, errs = gk15_panels(_k0_squared_over_u, edges[:-1], edges[1:])
        if errs.sum() < tol or sub >= 256:
            break
        sub *= 2
    gaps = vals.reshape(len(xs) - 1, sub).sum(axis=1)
    cum = np.concatenate([np.cumsum(gaps[::-1])[::-1], [0.0]])
    return cum, float(errs.sum())


def strip_integral_parseval(chi: DirichletCharacter, T: float, tol: float = 1e-10,
                            m_max: int | None = None) -> StripIntegral:
    """I(chi, 1/T, T) at s = 1/2 for primitive chi mod q >= 2."""
    q = chi.modulus
    if q < 2 or not chi.is_primitive:
        raise ValueError("need a primitive character with q >= 2")
    if T < 1:
        raise ValueError("T must be >= 1")
    kappa = chi.parity
    l1 = abs(dirichlet_l(1, chi))
    scale = 1.0 / (q * l1 * l1)
    constant = 2 * math.log(T)

    # per-mode bound with |sigma_0(m)|^2 <= d(m)^2 <= 4m
    if kappa == 0:
        def mode_bound(m):
            return 2 * 4 * 4 * m * scale * _k0_sq_tail_bound(2 * math.pi * m / T)
    else:
        def mode_bound(m):
            x = 4 * math.pi * m / T
            return 4 * math.pi ** 2 * 4 * m * scale * math.exp(-x) / x

    def tail_from(m0):
        # terms decrease geometrically beyond the peak of m e^{-c m}
        b = mode_bound(m0)
        r = mode_bound(m0 + 1) / b if b > 0 else 0.0
        return math.inf if r >= 1 else b / (1 - r)

    if m_max is None:
        M = max(1, int(T))
        while tail_from(M + 1) > tol / 2:
            M = int(M * 1.25) + 1
    else:
        M = m_max
    tail = tail_from(M + 1)
    if not math.isfinite(tail):
        raise TailNotCertified("mode tail not certifiable", None, tail)

    ms = np.arange(1, M + 1)
    sig2 = np.abs(sigma0_table(chi, 1, M)) ** 2
    if kappa == 0:
        xs = 2 * math.pi * np.arange(1, M + 2) / T
        cum, qerr = k0_square_integrals(xs)
        # the piece beyond x_{M+1} is bounded analytically for every kept mode
        f_end = _k0_sq_tail_bound(xs[-1])
        per_sign = 4 * sig2 * scale * cum[:-1]
        tail += 2 * (4 * float(sig2.sum()) * scale * f_end) + 8 * scale * float(sig2.sum()) * qerr
        contribs = []
        for m, c in zip(ms, per_sign):
            contribs.append((-int(m), float(c)))
        contribs.sort()
        contribs += [(int(m), float(c)) for m, c in zip(ms, per_sign)]
        mode_total = 2 * float(per_sign.sum())
    else:
        e1 = np.array([exp_integral_e1(4 * math.pi * m / T) for m in ms])
        vals = 4 * math.pi ** 2 * sig2 * scale * e1
        contribs = [(int(m), float(c)) for m, c in zip(ms, vals)]
        mode_total = float(vals.sum())
    return StripIntegral(float(T), 1 / T, constant, tuple(contribs), tail, constant + mode_total)


def mode_weight_kappa1(m: int, T: float, rho_abs_sq: float) -> float:
    """|rho(m)|^2 int_{1/T}^inf 4 pi m y e^{-4 pi m y} dy/y^2 = |rho|^2 4 pi m E_1(4 pi m/T)."""
    return rho_abs_sq * 4 * math.pi * m * exp_integral_e1(4 * math.pi * m / T)


# ---------------------------------------------------------- Maass-Selberg rhs


def ms_corollary_rhs(chi: DirichletCharacter, T: float) -> float:
    """2 log T - Re(phi'/phi)(1/2, chi)."""
    if T < 1:
        raise ValueError("T must be >= 1")
    return 2 * math.log(T) - scattering_log_derivative(chi).value


def ms_general_rhs(s, r, T: float, chi: DirichletCharacter) -> complex:
    """Four-term Maass-Selberg right-hand side for a = b = infinity, q >= 2.

    The phi_{inf,inf} terms vanish and the cusp sum reduces to the cusp 1:
    T^{s + conj r - 1}/(s + conj r - 1) + phi(s) conj(phi(r)) T^{1 - s - conj r}/(1 - s - conj r).
    Only s + conj r = 1 is a pole here; the s = conj r pole sits on the
    vanishing phi_{inf,inf} terms, so s = r = 1/2 + eps is allowed.
    """
    s, r = complex(s), complex(r)
    rb = r.conjugate()
    e = s + rb - 1
    if e == 0:
        raise PoleError("s + conj(r) = 1")
    if chi.modulus < 2:
        raise ValueError("need q >= 2")
    ps = scattering_phi(s, chi).value
    pr = scattering_phi(r, chi).value
    logT = math.log(T)
    return cmath.exp(e * logT) / e + ps * pr.conjugate() * cmath.exp(-e * logT) / (-e)


# ------------------------------------------------------------ sandwich checks


@dataclass(frozen=True)
class SandwichRecord:
    q: int
    chi_id: int
    T: float
    I_total: float
    I_const: float
    ms_rhs: float
    upper_bound: float
    upper_ok: bool
    lower_ok: bool
    ratio_lower: float           # I / R
    ratio_upper: float           # I / ((1 + 10 T/q) R)
    tail_bound: float

    def to_json(self) -> str:
        d = asdict(self)
        d["ratios"] = {"I_over_R": d.pop("ratio_lower"), "I_over_upper": d.pop("ratio_upper")}
        return json.dumps(d, sort_keys=True)


def sandwich_check(chi: DirichletCharacter, T: float, slack: float = 1e-6,
                   tol: float = 1e-10) -> SandwichRecord:
    """I <= (1 + 10T/q) R is checked; I >= R is only recorded."""
    q = chi.modulus
    strip = strip_integral_parseval(chi, T, tol)
    R = ms_corollary_rhs(chi, T)
    upper = (1 + 10 * T / q) * R
    I = strip.total
    return SandwichRecord(
        q=q, chi_id=character_id(chi), T=float(T), I_total=I, I_const=strip.constant_part,
        ms_rhs=R, upper_bound=upper, upper_ok=I <= upper + slack, lower_ok=I >= R,
        ratio_lower=I / R, ratio_upper=I / upper, tail_bound=strip.tail_bound)


@dataclass(frozen=True)
class ParsevalLowerBound:
    T: float
    restricted_sum: float        # sum_{T <= m <= 2T} |sigma_0(m)|^2
    arch_min: float              # min over m in [T, 2T] of the mode weight per |sigma_0|^2 unit
    I_total: float
    l1_abs: float
    c_real: float                # I q |L(1)|^2 / restricted_sum
    restricted_mode_part: float  # I's mode part kept to T <= m <= 2T


def parseval_lower_bound(chi: DirichletCharacter, T: float) -> ParsevalLowerBound:
    q = chi.modulus
    strip = strip_integral_parseval(chi, T)
    S = float(restricted_sigma_sum(chi, T).value)
    l1 = abs(dirichlet_l(1, chi))
    if chi.parity == 0:
        # both signs of m, each 4 F(2 pi m/T) >= 4 F(4 pi); dropping the
        # positive remainder beyond 4 pi + 40 keeps this a lower bound
        x_end = 4 * math.pi
        cum, _ = k0_square_integrals(np.array([x_end, x_end + 40.0]))
        arch = 8 * float(cum[0])
    else:
        arch = 4 * math.pi ** 2 * exp_integral_e1(8 * math.pi)
    kept = sum(c for m, c in strip.mode_contributions if T <= abs(m) <= 2 * T)
    c_real = strip.total * q * l1 * l1 / S if S > 0 else math.inf
    if not c_real > 0:
        raise ArithmeticError(f"realized constant {c_real} is not positive")
    return ParsevalLowerBound(float(T), S, arch, strip.total, l1, c_real, kept)
