"""Eisenstein series E_inf(z, s, chi) on Gamma_0(q).

Two independent evaluators are provided:

* ``eval_fourier`` sums the Whittaker expansion with closed-form Whittaker
  functions and a certified truncation bound;
* ``eval_direct`` sums the Bruhat double coset expansion (Re s > 1) with an
  explicit bound on the discarded rows and columns, at the cusp at infinity
  or at any singular cusp 1/v.

Helpers cover the scattering entry phi_{inf,1}, its logarithmic derivative
at s = 1/2, cusp geometry, automorphy checks and counting translates.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .characters import DirichletCharacter, decompose, gauss_sum, sigma_twisted
from .lfunctions import completed_lambda, dirichlet_l, hurwitz_zeta, l_log_derivative_at_one
from .special_functions import (EULER_GAMMA, UnsupportedCaseError, digamma, gamma,
                                reciprocal_gamma, whittaker_array, whittaker_via_t_integral)


class TruncationError(RuntimeError):
    """The requested tolerance cannot be certified at this point."""


class DivergenceError(ValueError):
    """The direct sum does not converge absolutely for Re(s) <= 1."""


class DivisionHazardError(ZeroDivisionError):
    """A denominator (L-value or completed L-value) vanishes numerically."""


class MembershipError(ValueError):
    """Matrix is not in Gamma_0(q)."""


class OutsideValidityError(ValueError):
    """Point lies outside the region where the formula is proven."""


class UnitarityError(ArithmeticError):
    """|phi(1/2 + it)| differs from 1 beyond tolerance."""


Y_MIN = 0.05


# ------------------------------------------------------------------ geometry


@dataclass(frozen=True)
class UpperHalfPlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"point must lie in the upper half plane (y={self.y})")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> UpperHalfPlanePoint:
        return cls(z.real, z.imag)


def _as_point(z) -> UpperHalfPlanePoint:
    if isinstance(z, UpperHalfPlanePoint):
        return z
    z = complex(z)
    return UpperHalfPlanePoint(z.real, z.imag)


def mobius(g, z: complex) -> complex:
    (a, b), (c, d) = g
    return (a * z + b) / (c * z + d)


def j_factor(g, z: complex) -> complex:
    """j_g(z) = (cz + d)/|cz + d|."""
    (_, _), (c, d) = g
    u = c * z + d
    return u / abs(u)


def matmul(g, h):
    (a, b), (c, d) = g
    (e, f), (k, l) = h
    return ((a * e + b * k, a * f + b * l), (c * e + d * k, c * f + d * l))


def matinv(g):
    (a, b), (c, d) = g
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


@dataclass(frozen=True)
class CuspData:
    q: int
    v: int
    w: int
    scaling_matrix: tuple

    @property
    def is_infinity(self) -> bool:
        return self.v == self.q

    @property
    def determinant(self) -> float:
        (a, b), (c, d) = self.scaling_matrix
        return a * d - b * c


def scaling_matrix(q: int, v: int) -> CuspData:
    """Cusp 1/v of Gamma_0(q) with its scaling matrix (sqrt w, 0; v sqrt w, 1/sqrt w).

    v = q denotes the cusp at infinity, whose scaling matrix is the identity.
    """
    if v < 1 or q % v:
        raise ValueError(f"v={v} does not divide q={q}")
    w = q // v
    if math.gcd(v, w) != 1:
        raise ValueError(f"cusp 1/{v} is not of the form vw = q with (v, w) = 1")
    if v == q:
        return CuspData(q, v, w, ((1.0, 0.0), (0.0, 1.0)))
    r = math.sqrt(w)
    return CuspData(q, v, w, ((r, 0.0), (v * r, 1 / r)))


def singular_cusps(q: int) -> list[CuspData]:
    return [scaling_matrix(q, v) for v in range(1, q + 1)
            if q % v == 0 and math.gcd(v, q // v) == 1]


# ------------------------------------------------------- Fourier coefficients


@dataclass(frozen=True)
class FourierCoefficient:
    m: int
    s: complex
    value: complex
    gauss_factor: complex        # tau(conj chi)
    reciprocal_gamma: complex    # 1/Gamma(s + sgn(m) kappa/2)
    sigma: complex               # sigma_{1-2s}(|m|, chi)
    l_value: complex             # L(2s, conj chi)


@lru_cache(maxsize=512)
def _rho_constants(s: complex, chi: DirichletCharacter):
    q = chi.modulus
    if q < 2:
        raise ValueError("Fourier coefficients are implemented for q >= 2")
    if not chi.is_primitive:
        raise ValueError("character must be primitive")
    chib = chi.conj()
    tau_bar = gauss_sum(chib).value
    l2s = dirichlet_l(2 * s, chib)
    if abs(l2s) < 1e-12:
        raise DivisionHazardError(f"L(2s, conj chi) = {l2s:.3e} at s={s}")
    base = 1j ** (-chi.parity) * tau_bar * cmath.exp(s * math.log(math.pi)) / (q ** (2 * s) * l2s)
    rg = {1: reciprocal_gamma(s + chi.parity / 2), -1: reciprocal_gamma(s - chi.parity / 2)}
    return tau_bar, l2s, base, rg


@lru_cache(maxsize=65536)
def _sigma(m: int, s_exp: complex, chi: DirichletCharacter) -> complex:
    return sigma_twisted(m, s_exp, chi).value


def rho_coefficient(m: int, s, chi: DirichletCharacter) -> FourierCoefficient:
    """rho_inf(m, s, chi); exact zero where 1/Gamma vanishes."""
    if m == 0:
        raise ValueError("m must be nonzero")
    s = complex(s)
    tau_bar, l2s, base, rg = _rho_constants(s, chi)
    sign = 1 if m > 0 else -1
    sig = _sigma(abs(m), 1 - 2 * s, chi)
    value = chi(sign) * base * abs(m) ** (s - 1) * rg[sign] * sig
    return FourierCoefficient(m, s, complex(value), tau_bar, rg[sign], sig, l2s)


def coefficient_table_csv(s, chi: DirichletCharacter, m_max: int) -> str:
    lines = ["m,re_rho,im_rho,abs_rho"]
    for m in [*range(-m_max, 0), *range(1, m_max + 1)]:
        v = rho_coefficient(m, s, chi).value
        lines.append(f"{m},{v.real:.17g},{v.imag:.17g},{abs(v):.17g}")
    return "\n".join(lines) + "\n"


def _check_supported(s: complex, kappa: int):
    on_line = abs(s.real - 0.5) < 1e-15
    if kappa == 0:
        if (s.imag == 0 and s.real > 0.5) or on_line:
            return
    elif s == 0.5:
        return
    raise UnsupportedCaseError(f"eval_fourier does not support kappa={kappa}, s={s}")


def _whittaker_bound_log(nu_sq: float, w: np.ndarray) -> np.ndarray:
    """log of an upper bound for |W_{+-kappa/2, nu}(w)| in the supported cases.

    kappa = 0: |sqrt(w/pi) K_nu(w/2)| <= exp(-w/2 + nu^2/w) (nu real), and
    |K_{it}| <= K_0 for imaginary order. kappa = 1, s = 1/2: sqrt(w) e^{-w/2}.
    max(1, sqrt w) covers both.
    """
    return -w / 2 + nu_sq / w + np.maximum(0.0, 0.5 * np.log(w))


def _mode_cutoff(s: complex, chi: DirichletCharacter, y: float, tol: float):
    """Smallest M whose two-sided tail bound is below tol; returns (M, bound)."""
    _, _, base, rg = _rho_constants(s, chi)
    sigma = s.real
    cmax = abs(base) * max(abs(rg[1]), abs(rg[-1]))
    nu_sq = max(s.real - 0.5, 0.0) ** 2
    ratio_decay = math.exp(-2 * math.pi * y)
    M = 1
    while True:
        # |rho_m W_m| <= cmax m^{sigma-1} d(m) B(4 pi m y), d(m) <= 2 sqrt(m)
        m1 = M + 1
        w = 4 * math.pi * m1 * y
        logb = (math.log(2 * cmax) + (sigma - 0.5) * math.log(m1)
                + float(_whittaker_bound_log(nu_sq, np.array([w]))[0]))
        r = ((m1 + 1) / m1) ** max(sigma, 1.0) * ratio_decay
        if r < 1:
            bound = 2 * math.exp(logb) / (1 - r)
            if bound < tol:
                return M, bound
        M = max(M + 1, int(M * 1.25))
        if M > 100000:
            raise TruncationError("mode cutoff did not converge")


@dataclass(frozen=True)
class FourierValue:
    value: complex
    tail_bound: float
    n_modes: int


def fourier_modes(y: float, s, chi: DirichletCharacter, tol: float = 1e-10):
    """Non-constant modes at height y: (m array, rho_m W_m array, tail bound)."""
    s = complex(s)
    _check_supported(s, chi.parity)
    if y < Y_MIN:
        raise TruncationError(f"y={y} below {Y_MIN}; truncation not certified")
    M, tail = _mode_cutoff(s, chi, y, tol)
    ms = np.array([*range(-M, 0), *range(1, M + 1)])
    w = 4 * math.pi * np.abs(ms) * y
    coeff = np.array([rho_coefficient(int(m), s, chi).value for m in ms])
    W = np.zeros(len(ms))
    if chi.parity == 0:
        pos = ms > 0
        W[pos] = whittaker_array(0, 1, s, w[pos])
        W[~pos] = W[pos][::-1]
    else:
        pos = ms > 0
        W[pos] = whittaker_array(1, 1, s, w[pos])
        # negative modes carry 1/Gamma(0) = 0 exactly
    return ms, coeff * W, tail


def eval_fourier(z, s, chi: DirichletCharacter, tol: float = 1e-10) -> FourierValue:
    """E_inf(z, s, chi) from its Fourier expansion (q >= 2)."""
    pt = _as_point(z)
    s = complex(s)
    ms, terms, tail = fourier_modes(pt.y, s, chi, tol)
    phases = np.exp(2j * np.pi * ms * pt.x)
    value = cmath.exp(s * math.log(pt.y)) + complex(np.dot(terms, phases))
    return FourierValue(value, tail, len(ms))


def eval_fourier_x(x: np.ndarray, y: float, s, chi: DirichletCharacter,
                   tol: float = 1e-10) -> np.ndarray:
    """eval_fourier on many x at a common height (values only)."""
    s = complex(s)
    ms, terms, _ = fourier_modes(y, s, chi, tol)
    phases = np.exp(2j * np.pi * np.outer(np.asarray(x, dtype=float), ms))
    return cmath.exp(s * math.log(y)) + phases @ terms


def predicted_mode(m: int, y: float, s, chi: DirichletCharacter,
                   tol: float = 1e-10) -> complex:
    """m-th Fourier mode from the numerical t-integral instead of closed forms.

    y^{1-s} I(m, y) chi(sgn m) tau(conj chi) sigma_{1-2s}(|m|) / (q^{2s} L(2s, conj chi)).
    """
    s = complex(s)
    tau_bar, l2s, _, _ = _rho_constants(s, chi)
    sign = 1 if m > 0 else -1
    integral = whittaker_via_t_integral(chi.parity, s, m, y, tol).value
    arith = chi(sign) * tau_bar * _sigma(abs(m), 1 - 2 * s, chi) / (chi.modulus ** (2 * s) * l2s)
    return cmath.exp((1 - s) * math.log(y)) * integral * arith


def eval_fourier_t_integral(z, s, chi: DirichletCharacter, m_max: int,
                            tol: float = 1e-10) -> complex:
    """Fourier sum truncated at |m| <= m_max, modes from ``predicted_mode``.

    Covers kappa = 1 away from s = 1/2, where no closed Whittaker form is used.
    """
    pt = _as_point(z)
    s = complex(s)
    total = cmath.exp(s * math.log(pt.y))
    for m in [*range(-m_max, 0), *range(1, m_max + 1)]:
        total += predicted_mode(m, pt.y, s, chi, tol) * cmath.exp(2j * math.pi * m * pt.x)
    return total


# ---------------------------------------------------------- direct Bruhat sum


@dataclass(frozen=True)
class DirectValue:
    value: complex | np.ndarray
    tail_bound: float
    rows: int


def _row_structure(chi: DirichletCharacter, cusp: CuspData):
    """Return (c_step, crow_factor, dscale, identity?, row weights(c) -> array)."""
    q = chi.modulus
    if cusp.is_infinity:
        vals = chi.conj().values

        def weights(c):
            d = np.arange(c)
            coprime = np.gcd(d, c) == 1
            return np.where(coprime, vals[d % q], 0)
        return q, 1.0, 1.0, True, weights
    v, w = cusp.v, cusp.w
    chi_v, chi_w = decompose(chi, v)
    vb = chi_v.conj().values
    rw = math.sqrt(w)

    def weights(c):
        if math.gcd(c, w) != 1:
            return None
        pre = chi_w.conj()(c // v)
        period = c * w
        d = np.arange(period)
        ok = (np.gcd(d, period) == 1) & (d % w == (c // v) % w)
        return np.where(ok, pre * vb[d % v], 0)
    return v, rw, 1 / rw, False, weights


def _direct_tail(s: complex, y: float, c_step: int, crow_factor: float, dscale: float,
                 k_max: int, dwidth: float) -> float:
    """Bound on the discarded part of the Bruhat sum.

    Rows c = c_step k with k > k_max, and within kept rows the columns with
    |Re(u)| > dwidth, where u = crow (x + iy) + d dscale.
    """
    sigma = s.real
    bs = math.sqrt(math.pi) * math.exp(math.lgamma(sigma - 0.5) - math.lgamma(sigma))
    a = c_step * crow_factor * y            # crow * y for k = 1
    # row k: y^sigma [ (a k)^{-2 sigma} + B (a k)^{1 - 2 sigma} / dscale ]
    rows = y ** sigma * (a ** (-2 * sigma) * k_max ** (1 - 2 * sigma) / (2 * sigma - 1)
                         + bs / dscale * a ** (1 - 2 * sigma)
                         * k_max ** (2 - 2 * sigma) / (2 * sigma - 2))
    # columns: sum_{|u| > D} |u|^{-2 sigma} <= (2/dscale) (D - dscale)^{1-2 sigma}/(2 sigma - 1)
    cols = k_max * y ** sigma * 2 / dscale * (dwidth - dscale) ** (1 - 2 * sigma) / (2 * sigma - 1)
    return rows + cols


def eval_direct(z, s, chi: DirichletCharacter, cusp: CuspData | None = None,
                c_max: int | None = None, n_max: float | None = None,
                tol: float = 1e-9, x=None) -> DirectValue:
    """Bruhat-sum evaluation of j_{sigma_b}(z)^{-kappa} E_inf(sigma_b z, s, chi).

    With the cusp at infinity (default) this is E_inf(z, s, chi) itself. ``c_max``
    caps the row index c and ``n_max`` the column half-width |Re(u)|; by default
    both are chosen so the certified tail is below ``tol``. Passing an array
    ``x`` evaluates at x + iy for all entries at once (y from z).
    """
    s = complex(s)
    if s.real <= 1:
        raise DivergenceError("direct Bruhat sum requires Re(s) > 1")
    pt = _as_point(z)
    y = pt.y
    xs = np.atleast_1d(np.asarray(pt.x if x is None else x, dtype=float))
    cusp = cusp or scaling_matrix(chi.modulus, chi.modulus)
    if cusp.q != chi.modulus:
        raise ValueError("cusp and character moduli differ")
    c_step, crow_factor, dscale, has_identity, weights = _row_structure(chi, cusp)

    if c_max is None:
        k_max = 1
        while _direct_tail(s, y, c_step, crow_factor, dscale, k_max, 1e300) > tol / 2:
            k_max *= 2
    else:
        k_max = max(1, c_max // c_step)
    if n_max is None:
        dwidth = 1.0 + dscale
        while _direct_tail(s, y, c_step, crow_factor, dscale, k_max, dwidth) > tol:
            dwidth *= 1.5
    else:
        dwidth = float(n_max)
    tail = _direct_tail(s, y, c_step, crow_factor, dscale, k_max, dwidth)

    total = np.zeros(len(xs), dtype=complex)
    if has_identity:
        total += cmath.exp(s * math.log(y))
    rows = 0
    for k in range(1, k_max + 1):
        c = c_step * k
        wts = weights(c)
        if wts is None:
            continue
        crow = c * crow_factor
        # need |crow x + d dscale| <= dwidth for some x in xs
        dmin = math.floor((-crow * xs.max() - dwidth) / dscale)
        dmax = math.ceil((-crow * xs.min() + dwidth) / dscale)
        total += kernels.bruhat_row_sum(xs, y, s, chi.parity, crow, dscale, wts, dmin, dmax)
        rows += 1
    value = total if x is not None else complex(total[0])
    return DirectValue(value, tail, rows)


def direct_mode(m: int, y: float, s, chi: DirichletCharacter, cusp: CuspData | None = None,
                n_points: int = 64, tol: float = 1e-10) -> complex:
    """int_0^1 F(x + iy) e(-m x) dx for F = eval_direct, by the periodic trapezoid rule."""
    xs = np.arange(n_points) / n_points
    vals = eval_direct(complex(0, y), s, chi, cusp, tol=tol, x=xs).value
    return complex(np.mean(vals * np.exp(-2j * np.pi * m * xs)))


def constant_term_components(y: float, s, chi: DirichletCharacter, cusp: CuspData,
                             n_points: int = 64, tol: float = 1e-10) -> tuple[complex, complex]:
    """Split the constant term at cusp b into (delta y^s coefficient, y^{1-s} coefficient).

    For b not equivalent to infinity the y^s part is 0 by construction and
    the y^{1-s} coefficient is phi_{inf,b}(s, chi).
    """
    s = complex(s)
    c0 = direct_mode(0, y, s, chi, cusp, n_points, tol)
    if cusp.is_infinity:
        ys = cmath.exp(s * math.log(y))
        return 1.0 + 0j, (c0 - ys) / cmath.exp((1 - s) * math.log(y))
    return 0j, c0 / cmath.exp((1 - s) * math.log(y))


# ---------------------------------------------------------------- scattering


@dataclass(frozen=True)
class ScatteringEntry:
    s: complex
    value: complex
    log_derivative_at_half: float | None = None


def scattering_phi(s, chi: DirichletCharacter, unitarity_tol: float = 1e-8) -> ScatteringEntry:
    """phi_{inf,1}(s, chi) for q >= 2; for q = 1 the entry phi_{inf,inf}."""
    s = complex(s)
    q = chi.modulus
    if q == 1:
        value = (math.sqrt(math.pi) * gamma(s - 0.5) * reciprocal_gamma(s)
                 * hurwitz_zeta(2 * s - 1, 1.0) / hurwitz_zeta(2 * s, 1.0))
        return ScatteringEntry(s, value)
    den = completed_lambda(2 * s, chi.conj()).completed
    if abs(den) < 1e-300 or not cmath.isfinite(den):
        raise DivisionHazardError(f"Lambda(2s, conj chi) = {den} at s={s}")
    num = completed_lambda(2 - 2 * s, chi).completed
    if not cmath.isfinite(num):
        raise DivisionHazardError(f"Lambda(2-2s, chi) not finite at s={s}")
    value = gauss_sum(chi).value.conjugate() * q ** (-s) * num / den
    if abs(s.real - 0.5) < 1e-15 and abs(abs(value) - 1) > unitarity_tol:
        raise UnitarityError(f"|phi(1/2+it)| = {abs(value)!r}")
    log_der = scattering_log_derivative(chi).value if s == 0.5 else None
    return ScatteringEntry(s, value, log_der)


@dataclass(frozen=True)
class ScatteringLogDerivative:
    value: float                 # closed form, the one downstream code uses
    numeric: float               # Richardson central difference along real s
    numeric_imag: float          # should vanish (|phi| = 1 on the line)
    printed_closed_form: float   # variant with the half-integer digamma constant as printed
    relative_defect: float


def scattering_log_derivative(chi: DirichletCharacter, h: float = 1e-3) -> ScatteringLogDerivative:
    """phi'/phi(1/2, chi) in closed form and numerically.

    Closed form: -3 log q + 2 log pi - 2 psi((1+kappa)/2) - 4 Re L'/L(1, chi),
    from differentiating log phi = log conj(tau) - s log q + log Lambda(2-2s, chi)
    - log Lambda(2s, conj chi) at s = 1/2.
    """
    q = chi.modulus
    if q < 2:
        raise ValueError("need q >= 2")
    kappa = chi.parity
    re_ld = l_log_derivative_at_one(chi).value.real
    psi = digamma((1 + kappa) / 2).real
    closed = -3 * math.log(q) + 2 * math.log(math.pi) - 2 * psi - 4 * re_ld
    printed = (-4 * re_ld - 2 * math.log(q) + math.log(8 * math.pi) + EULER_GAMMA
               + (-1) ** kappa * math.pi / 2)

    def phi(s):
        return scattering_phi(s, chi, unitarity_tol=math.inf).value

    def central(step):
        return cmath.log(phi(0.5 + step) / phi(0.5 - step)) / (2 * step)

    num = (4 * central(h / 2) - central(h)) / 3
    rel = abs(num.real - closed) / abs(closed)
    return ScatteringLogDerivative(closed, num.real, num.imag, printed, rel)


# --------------------------------------------------------------- truncation


def truncated_eval_strip(z, s, chi: DirichletCharacter, T: float,
                         tol: float = 1e-10) -> complex:
    """Lambda^T E_inf(z, s, chi) for y > 1/T.

    Equals E for 1/T < y <= T and E - y^s for y > T (q >= 2, so the constant
    term is y^s alone).
    """
    pt = _as_point(z)
    if T < 1:
        raise ValueError("T must be >= 1")
    if pt.y <= 1 / T:
        raise OutsideValidityError(f"y={pt.y} <= 1/T={1 / T}")
    s = complex(s)
    val = eval_fourier(pt, s, chi, tol).value
    if pt.y > T:
        val -= cmath.exp(s * math.log(pt.y))
    return val


# ----------------------------------------------------------------- Gamma_0(q)


def _is_gamma0(g, q: int) -> bool:
    (a, b), (c, d) = g
    ints = all(isinstance(v, (int, np.integer)) for v in (a, b, c, d))
    return ints and a * d - b * c == 1 and c % q == 0


def automorphy_defect(g, z, s, chi: DirichletCharacter, tol: float = 1e-10) -> float:
    """|E(gz) - chi(d) j_g(z)^kappa E(z)| via eval_fourier at both points."""
    q = chi.modulus
    if not _is_gamma0(g, q):
        raise MembershipError(f"{g} is not in Gamma_0({q})")
    z = _as_point(z).z
    gz = mobius(g, z)
    lhs = eval_fourier(gz, s, chi, tol).value
    rhs = chi(g[1][1]) * j_factor(g, z) ** chi.parity * eval_fourier(z, s, chi, tol).value
    return abs(lhs - rhs)


def cocycle_defect(g1, g2, z) -> float:
    """|j_{g1 g2}(z) - j_{g2}(z) j_{g1}(g2 z)|."""
    z = _as_point(z).z
    return abs(j_factor(matmul(g1, g2), z) - j_factor(g2, z) * j_factor(g1, mobius(g2, z)))


def random_gamma0(q: int, rng: random.Random, max_c: int = 15, max_entry: int = 10 ** 6,
                  max_len: int = 12):
    """Random element of Gamma_0(q) with 0 < c <= max_c, from a word in
    T^{+-1} = (1, +-1; 0, 1), L^{+-1} = (1, 0; +-q, 1) and, for each unit u
    mod q, (a, b; q, u) with a u - b q = 1 (so every residue class of d occurs)."""
    if max_c < q:
        raise ValueError(f"no lower-left entry 0 < c <= {max_c} is divisible by q={q}")
    gens = [((1, 1), (0, 1)), ((1, -1), (0, 1)), ((1, 0), (q, 1)), ((1, 0), (-q, 1))]
    for u in range(2, q):
        if math.gcd(u, q) == 1:
            a = pow(u, -1, q)
            gens.append(((a, (a * u - 1) // q), (q, u)))
    while True:
        g = ((1, 0), (0, 1))
        for _ in range(rng.randint(2, max_len)):
            g = matmul(g, rng.choice(gens))
        (a, b), (c, d) = g
        if c != 0 and abs(c) <= max_c and max(abs(a), abs(b), abs(d)) <= max_entry:
            # -g acts identically; keep c > 0 so isometric points lie in H
            return g if c > 0 else ((-a, -b), (-c, -d))


def isometric_point(g, theta: float) -> complex:
    """Point on the isometric circle |cz + d| = 1 of g, so Im(gz) = Im(z)."""
    (_, _), (c, d) = g
    return (-d + cmath.exp(1j * theta)) / c


def automorphy_sample(q: int, rng: random.Random, y_min: float = 0.06):
    """(g, z) with g in Gamma_0(q) and Im(z) = Im(gz) >= y_min."""
    if q * y_min > 1:
        raise ValueError(f"isometric circles of Gamma_0({q}) stay below y = {y_min}")
    while True:
        g = random_gamma0(q, rng, max_c=min(15, int(1 / y_min)))
        c = g[1][0]
        lo = math.asin(min(1.0, y_min * c))
        z = isometric_point(g, rng.uniform(lo, math.pi - lo))
        if z.imag >= y_min:
            return g, z


def count_translates(z, eta: float, q: int) -> int:
    """#{gamma in Gamma_inf \\ Gamma_0(q) : Im(gamma z) > eta}.

    Cosets are bottom rows (c, d) coprime with c > 0, q | c, plus (0, 1).
    Im(gamma z) = y/|cz + d|^2 > eta forces c^2 y^2 < y/eta.
    """
    if not 0 < eta <= 1:
        raise ValueError("eta must lie in (0, 1]")
    pt = _as_point(z)
    x, y = pt.x, pt.y
    bound = y / eta
    count = 1 if y > eta else 0
    c = q
    while c * c * y * y < bound:
        rad = math.sqrt(bound - c * c * y * y)
        for d in range(math.floor(-c * x - rad), math.ceil(-c * x + rad) + 1):
            if math.gcd(c, d) == 1 and (c * x + d) ** 2 + (c * y) ** 2 < bound:
                count += 1
        c += q
    return count


def translate_bound(q: int, eta: float) -> float:
    return 1 + 10 / (q * eta)


@dataclass(frozen=True)
class HeightPair:
    product: float          # Im(z) Im(gamma z)
    ratio: float            # Im(gamma z) / Im(z)
    is_translation: bool
    lower_left: float


def height_pair_check(b: CuspData, c: CuspData, g, z) -> HeightPair:
    """Im(z) Im(gamma z) for gamma = sigma_c^{-1} g sigma_b with g in Gamma_0(q)."""
    if not _is_gamma0(g, b.q):
        raise MembershipError(f"{g} is not in Gamma_0({b.q})")
    gam = matmul(matmul(matinv(c.scaling_matrix), g), b.scaling_matrix)
    z = _as_point(z).z
    gz = mobius(gam, z)
    lower = gam[1][0]
    return HeightPair(z.imag * gz.imag, gz.imag / z.imag, abs(lower) < 1e-12, lower)
