"""Special functions used by the Fourier expansion of the Eisenstein series.

Everything here is computed in-repo from series, continued fractions or
integral representations: complex (reciprocal) gamma and digamma, the
K-Bessel function of real or purely imaginary order, the exponential
integral E1, the closed Whittaker forms W_{0,nu}, W_{+-1/2,0}, and the
oscillatory t-integral that defines the archimedean factor of a Fourier mode.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .quadrature import QuadratureError, QuadratureSpec, QuadResult, fixed_panels, integrate

EULER_GAMMA = 0.57721566490153286060651209008240243


class UnsupportedCaseError(ValueError):
    """Parameter combination outside the closed forms implemented here."""


class PoleError(ZeroDivisionError):
    """Evaluation at a pole."""


# ---------------------------------------------------------------- Bernoulli


@lru_cache(maxsize=None)
def bernoulli_numbers(n_max: int) -> tuple[Fraction, ...]:
    """B_0..B_{n_max} (with B_1 = -1/2), via the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n_max >= 1:
        out[1] = -out[1]  # algorithm yields B_1 = +1/2
    return tuple(out)


_B2K = [float(b) for b in bernoulli_numbers(40)[2::2]]  # B_2, B_4, ..., B_40


# ---------------------------------------------------------------- gamma family

_STIRLING_SHIFT = 15.0


def _stirling_loggamma(z: complex) -> complex:
    # Valid for |z| >= 15 away from the negative axis.
    acc = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi)
    zk = z
    z2 = z * z
    for k in range(1, 10):
        acc += _B2K[k - 1] / (2 * k * (2 * k - 1) * zk)
        zk *= z2
    return acc


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def reciprocal_gamma(s) -> complex:
    """Entire function 1/Gamma(s); exactly 0 at s = 0, -1, -2, ..."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        return 0j
    if s.imag == 0 and s.real == math.floor(s.real) and s.real <= 171:
        return complex(1 / math.factorial(int(s.real) - 1))
    if s.real < 0.5:
        # 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi
        return cmath.sin(math.pi * s) / (math.pi * reciprocal_gamma(1 - s))
    n = max(0, math.ceil(_STIRLING_SHIFT - s.real))
    prod = 1 + 0j
    for k in range(n):
        prod *= s + k
    return prod * cmath.exp(-_stirling_loggamma(s + n))


def gamma(s) -> complex:
    r = reciprocal_gamma(s)
    if r == 0:
        raise PoleError(f"Gamma has a pole at s={s}")
    return 1 / r


def loggamma(s) -> complex:
    """log Gamma(s) for Re(s) >= 1/2 (principal branch of each factor)."""
    s = complex(s)
    if s.real < 0.5:
        raise ValueError("loggamma implemented for Re(s) >= 1/2 only")
    n = max(0, math.ceil(_STIRLING_SHIFT - s.real))
    acc = _stirling_loggamma(s + n)
    for k in range(n):
        acc -= cmath.log(s + k)
    return acc


def digamma(s) -> complex:
    """psi(s) via upward recurrence and the asymptotic Bernoulli series."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"digamma has a pole at s={s}")
    if s.real < 0.5:
        return digamma(1 - s) - math.pi / cmath.tan(math.pi * s)
    acc = 0j
    while abs(s) < 20 or s.real < 10:
        acc -= 1 / s
        s += 1
    acc += cmath.log(s) - 1 / (2 * s)
    s2 = s * s
    sk = s2
    for k in range(1, 10):
        acc -= _B2K[k - 1] / (2 * k * sk)
        sk *= s2
    return acc


class DigammaCheck(NamedTuple):
    series: float
    closed_form: float
    defect: float


def digamma_halfint_check(kappa: int) -> DigammaCheck:
    """Compare psi((1+kappa)/2) with -log 8 - gamma_0 - (-1)^kappa pi/2.

    The right-hand constant is really psi((1+2 kappa)/4), so the defect is
    log 2 + pi/2 for kappa = 0 and log 8 - pi/2 for kappa = 1.
    """
    if kappa not in (0, 1):
        raise ValueError("kappa must be 0 or 1")
    series = digamma((1 + kappa) / 2).real
    closed = -math.log(8) - EULER_GAMMA - (-1) ** kappa * math.pi / 2
    return DigammaCheck(series, closed, series - closed)


# ---------------------------------------------------------------- K-Bessel


def _bessel_order(order) -> tuple[float, bool]:
    """Return (|nu| or tau, imaginary?) for real or purely imaginary orders."""
    nu = complex(order)
    if nu.imag == 0:
        return abs(nu.real), False
    if nu.real == 0:
        return abs(nu.imag), True
    raise UnsupportedCaseError("K-Bessel order must be real or purely imaginary")


def _bessel_cutoff(nu_eff: float, y: float, tol: float) -> float:
    """Truncation point U with  int_U^inf e^{-y(cosh u - 1)} cosh(nu u) du < tol.

    Uses cosh u >= e^u/2 and v = e^u:  tail <= e^y (4/y) V^{max(nu-1,0)} e^{-yV/4}
    once V >= 4 (nu - 1)/y.
    """
    v = max(1.0, 4 * (nu_eff - 1) / y, 2.0)
    while True:
        log_tail = y + math.log(4 / y) + max(nu_eff - 1, 0) * math.log(v) - y * v / 4
        if log_tail < math.log(tol):
            return math.log(v)
        v *= 1.25


def _bessel_integrand(nu_eff, imaginary, y):
    if imaginary:
        return lambda u: np.exp(-y * (np.cosh(u) - 1)) * np.cos(nu_eff * u)
    return lambda u: np.exp(-y * (np.cosh(u) - 1)) * np.cosh(nu_eff * u)


def bessel_k_quad(order, y: float, spec: QuadratureSpec | None = None,
                  scaled: bool = False) -> QuadResult:
    """K_nu(y) = int_0^inf e^{-y cosh u} cosh(nu u) du, adaptively.

    With ``scaled`` the result is e^y K_nu(y). The reported error includes the
    truncated tail.
    """
    if not y > 0:
        raise ValueError(f"K-Bessel requires y > 0, got {y}")
    spec = spec or QuadratureSpec(abstol=1e-300, reltol=1e-13)
    nu_eff, imaginary = _bessel_order(order)
    tail_tol = 1e-17
    u_max = _bessel_cutoff(nu_eff, y, tail_tol)
    res = integrate(_bessel_integrand(nu_eff, imaginary, y), 0.0, u_max, spec, panels=4)
    value, err = float(res.value), res.error + tail_tol
    if not scaled:
        value *= math.exp(-y)
        err *= math.exp(-y)
    return QuadResult(value, err, res.n_eval)


def bessel_k(order, y: float) -> float:
    """K-Bessel function of real or purely imaginary order at y > 0."""
    return bessel_k_quad(order, y).value


def bessel_k_array(order, y, reltol: float = 1e-13, scaled: bool = False):
    """Vectorized K_nu(y) by the trapezoid rule on [0, U] with step halving.

    The integrand extends to an even analytic function of u decaying
    doubly-exponentially, so the trapezoid rule converges geometrically.
    Returns (values, error estimates).
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(y <= 0):
        raise ValueError("K-Bessel requires y > 0")
    nu_eff, imaginary = _bessel_order(order)
    u_max = _bessel_cutoff(nu_eff, float(y.min()), 1e-17)
    h = 0.25
    prev = None
    while True:
        u = np.arange(0.0, u_max + h, h)
        w = np.full(u.shape, h)
        w[0] = h / 2
        cu = np.cos(nu_eff * u) if imaginary else np.cosh(nu_eff * u)
        vals = np.exp(-y[:, None] * (np.cosh(u)[None, :] - 1)) @ (w * cu)
        if prev is not None:
            err = np.abs(vals - prev)
            if np.all(err <= reltol * np.abs(vals)) or h < 1e-3:
                break
        prev = vals
        h /= 2
    err = err + 1e-17
    if not scaled:
        damp = np.exp(-y)
        vals, err = vals * damp, err * damp
    return vals, err


# ---------------------------------------------------------------- E1


def exp_integral_e1(x: float, scaled: bool = False) -> float:
    """E1(x) = int_x^inf e^{-u}/u du for x > 0 (``scaled``: e^x E1(x)).

    Power series for x <= 1, modified Lentz continued fraction beyond.
    """
    if not x > 0:
        raise ValueError(f"E1 requires x > 0, got {x}")
    if x <= 1:
        term = 1.0
        acc = 0.0
        k = 1
        while True:
            term *= -x / k
            contrib = -term / k
            acc += contrib
            if abs(contrib) < 1e-17 * abs(acc):
                break
            k += 1
        value = -EULER_GAMMA - math.log(x) + acc
        return value * math.exp(x) if scaled else value
    tiny = 1e-300
    b = x + 1
    c = 1 / tiny
    d = 1 / b
    h = d
    i = 1
    while True:
        an = -i * i
        b += 2
        d = 1 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1) < 1e-16:
            break
        i += 1
    return h if scaled else h * math.exp(-x)


# ---------------------------------------------------------------- Whittaker


def whittaker_closed(alpha, nu, w: float) -> float:
    """Closed forms of W_{alpha,nu}(w) for the cases the expansion needs.

    alpha = 0, nu real or imaginary : sqrt(w/pi) K_nu(w/2)
    alpha = +1/2, nu = 0            : sqrt(w) e^{-w/2}
    alpha = -1/2, nu = 0            : sqrt(w) e^{w/2} E1(w)
    """
    if not w > 0:
        raise ValueError("Whittaker argument must be positive")
    if alpha == 0:
        return math.sqrt(w / math.pi) * bessel_k(nu, w / 2)
    if complex(nu) != 0:
        raise UnsupportedCaseError(f"W_{{{alpha},{nu}}} has no closed form here")
    if alpha == 0.5:
        return math.sqrt(w) * math.exp(-w / 2)
    if alpha == -0.5:
        return math.sqrt(w) * math.exp(-w / 2) * exp_integral_e1(w, scaled=True)
    raise UnsupportedCaseError(f"unsupported Whittaker index alpha={alpha}")


def whittaker_array(kappa: int, sign: int, s, w):
    """W_{sign kappa/2, s-1/2}(w) on an array of arguments (closed forms only)."""
    w = np.asarray(w, dtype=float)
    if kappa == 0:
        k, _ = bessel_k_array(complex(s) - 0.5, w / 2)
        return np.sqrt(w / math.pi) * k
    if complex(s) != 0.5:
        raise UnsupportedCaseError("odd characters are supported at s = 1/2 only")
    if sign > 0:
        return np.sqrt(w) * np.exp(-w / 2)
    return np.array([whittaker_closed(-0.5, 0, float(v)) for v in w.ravel()]).reshape(w.shape)


def t_integrand(kappa: int, s, omega: float):
    """t -> ((t+i)/|t+i|)^{-kappa} |t+i|^{-2s} e^{-i omega t}."""
    s = complex(s)

    def f(t):
        return (t - 1j) ** kappa * np.exp(-(s + kappa / 2) * np.log1p(t * t)) * np.exp(-1j * omega * t)
    return f


def whittaker_via_t_integral(kappa: int, s, m: int, y: float,
                             tol: float = 1e-10) -> QuadResult:
    """Numerically integrate  int_R ((t+i)/|t+i|)^{-kappa} e(-m y t) |t+i|^{-2s} dt.

    Writing the integrand as g(t) e^{-i omega t} with omega = 2 pi m y, the
    range |t| > T0 is handled by two integrations by parts; the remainder is
    bounded by (A^2 + A) T0^{-2 sigma - 1} / (omega^2 (2 sigma + 1)) per side,
    where A = kappa + |2s + kappa| and sigma = Re(s). The finite part uses
    G7K15 panels no wider than 1/(8 |m| y).
    """
    s = complex(s)
    sigma = s.real
    if kappa not in (0, 1):
        raise ValueError("kappa must be 0 or 1")
    if not sigma > 0.5:
        raise ValueError("t-integral requires Re(s) > 1/2")
    if m == 0 or not y > 0:
        raise ValueError("need m != 0 and y > 0")
    omega = 2 * math.pi * m * y
    a_const = kappa + abs(2 * s + kappa)
    c = (a_const ** 2 + a_const) / (omega ** 2 * (2 * sigma + 1))
    # two tails, each to tol/8
    t0 = max(4.0, (8 * c / tol) ** (1 / (2 * sigma + 1)), 4 / abs(m * y))
    width = min(1 / (8 * abs(m) * y), 0.5)
    f = t_integrand(kappa, s, omega)
    core = fixed_panels(f, -t0, t0, width)

    def g(t):
        return (t - 1j) ** kappa * (t * t + 1) ** (-(s + kappa / 2))

    def dg(t):
        return g(t) * (kappa / (t - 1j) - (2 * s + kappa) * t / (t * t + 1))

    iw = 1j * omega
    right = cmath.exp(-1j * omega * t0) * (g(t0) / iw + dg(t0) / iw ** 2)
    left = -cmath.exp(1j * omega * t0) * (g(-t0) / iw + dg(-t0) / iw ** 2)
    remainder = 2 * c * t0 ** (-2 * sigma - 1)
    value = core.value + right + left
    error = core.error + remainder
    if error > tol:
        raise QuadratureError(f"t-integral error estimate {error:.3e} exceeds {tol:.1e}",
                              value, error)
    return QuadResult(complex(value), error, core.n_eval)


def whittaker_t_integral_closed(kappa: int, s, m: int, y: float) -> complex:
    """Right-hand side of the t-integral identity, i^{-kappa} pi^s |m y|^{s-1} W / Gamma.

    Only available where ``whittaker_closed`` is (kappa = 0, or s = 1/2).
    """
    s = complex(s)
    sign = 1 if m > 0 else -1
    w = 4 * math.pi * abs(m) * y
    if kappa == 0:
        wv = whittaker_closed(0, s - 0.5, w)
    elif s == 0.5:
        wv = whittaker_closed(sign * 0.5, 0, w)
    else:
        raise UnsupportedCaseError("closed t-integral needs kappa = 0 or s = 1/2")
    return ((1j) ** (-kappa) * math.pi ** s * (abs(m) * y) ** (s - 1)
            * reciprocal_gamma(s + sign * kappa / 2) * wv)
