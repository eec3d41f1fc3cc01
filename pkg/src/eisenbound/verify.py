"""Aggregated invariant checks at two grid sizes.

Every check runs even if an earlier one failed; each returns a CheckResult
with the worst observed defect. ``inject`` deliberately breaks one ingredient
so the suite can be shown to notice.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass

import numpy as np

from .bounds import ScanOptions, scan_theorem
from .characters import char_sum_pair, enumerate_primitive_characters, gauss_sum
from .eisenstein import (automorphy_defect, automorphy_sample, constant_term_components,
                         direct_mode, eval_direct, eval_fourier_t_integral,
                         fourier_modes, predicted_mode, scaling_matrix,
                         scattering_log_derivative, scattering_phi)
from .lfunctions import functional_equation_defect
from .ms_analysis import ms_corollary_rhs, ms_general_rhs, sandwich_check
from .sieve import (bal_ram_parameters, brun_titchmarsh_check, prime_restricted_identity,
                    prime_table, quadratic_floor, restricted_sigma_sum)

LEVELS = ("quick", "full")
FAULTS = ("rho",)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str
    seconds: float


@dataclass(frozen=True)
class SuiteReport:
    level: str
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"level": self.level, "passed": self.passed,
                "results": [asdict(r) for r in self.results]}


def _prims(qs):
    return [(q, c) for q in qs for c in enumerate_primitive_characters(q)]


def check_char_sum_pair(full):
    worst = 0.0
    for q, chi in _prims(range(3 if not full else 1, 21 if full else 9)):
        for c in [k * q for k in (1, 2, 3, 4) if k * q <= 120]:
            for m in [*range(-40, 0), *range(1, 41)]:
                lhs, rhs = char_sum_pair(chi, m, c)
                worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-10, worst, "max |lhs - rhs|"


def check_gauss_modulus(full):
    worst = 0.0
    for q, chi in _prims(range(1, 101 if full else 31)):
        worst = max(worst, abs(abs(gauss_sum(chi).value) - math.sqrt(q)))
    return worst <= 1e-12, worst, "max ||tau| - sqrt q|"


def check_functional_equation(full):
    worst = 0.0
    for q, chi in _prims(range(1, 51 if full else 16)):
        for s in (0.3, 0.5, 0.7, 0.5 + 2j):
            worst = max(worst, functional_equation_defect(s, chi))
    return worst < 1e-8, worst, "max functional-equation defect"


def check_unitarity(full):
    worst = 0.0
    for q, chi in _prims(range(2, 51 if full else 16)):
        for t in (0.0, 0.5, 1.0):
            v = scattering_phi(0.5 + 1j * t, chi, unitarity_tol=math.inf).value
            worst = max(worst, abs(abs(v) - 1))
    return worst < 1e-8, worst, "max ||phi(1/2+it)| - 1|"


def check_log_derivative(full):
    qs = (3, 4, 5, 7, 8, 11, 12, 13) if full else (3, 4, 5)
    worst = max(scattering_log_derivative(chi).relative_defect for _, chi in _prims(qs))
    return worst < 1e-6, worst, "max relative defect closed form vs numeric"


_GRID_X = (0.0, 1 / 3, 2 / 3)
_GRID_Y = (0.7, 1.1, 1.5)


def check_fourier_direct(full, rho_scale=1.0):
    qs = (3, 4, 5, 8) if full else (3, 4)
    pts = [complex(x, y) for x in _GRID_X for y in _GRID_Y] if full else [0.3 + 0.9j, 0.7j + 0.1]
    worst = 0.0
    for q, chi in _prims(qs):
        for z in pts:
            d = eval_direct(z, 3, chi, tol=1e-12).value
            if chi.parity == 0:
                ms, terms, _ = fourier_modes(z.imag, 3, chi, tol=1e-12)
                f = z.imag ** 3 + rho_scale * complex(np.dot(terms, np.exp(2j * np.pi * ms * z.real)))
            else:
                f = z.imag ** 3 + rho_scale * (eval_fourier_t_integral(z, 3, chi, m_max=12)
                                               - z.imag ** 3)
            # relative to the non-constant part (what rho controls), floored
            # where that part nearly cancels
            worst = max(worst, abs(f - d) / max(abs(d - z.imag ** 3), 1e-3))
        # per-mode: rho ingredients x t-integral factor against the direct modes
        y = 1.0
        for m in (-2, -1, 1, 2):
            pm = rho_scale * predicted_mode(m, y, 3, chi)
            worst = max(worst, abs(pm - direct_mode(m, y, 3, chi)))
    return worst < 1e-5, worst, "max Fourier vs direct defect (relative to non-constant part) and |m| <= 2 mode defect"


def check_cusp_vanishing(full):
    chi = [c for c in enumerate_primitive_characters(12)][0]
    worst = 0.0
    for v in (3, 4):
        _, c = constant_term_components(1.0, 3, chi, scaling_matrix(12, v))
        worst = max(worst, abs(c))
    _, c1 = constant_term_components(1.0, 3, chi, scaling_matrix(12, 1))
    phi = scattering_phi(3, chi).value
    worst = max(worst, abs(c1 - phi))
    return worst < 1e-4, worst, "max |y^{1-s} coefficient| at v=3,4 and |c - phi| at v=1"


def check_automorphy(full, seed=0):
    rng = random.Random(seed)
    worst = 0.0
    n = 10 if full else 3
    for q, chi in _prims((3, 4, 5)):
        for _ in range(n):
            g, z = automorphy_sample(q, rng)
            worst = max(worst, automorphy_defect(g, z, 0.5, chi))
    return worst < 1e-6, worst, "max automorphy defect"


def check_eps_limit(full):
    ratios = []
    for q, chi in _prims((3, 4, 5)):
        for T in (2, 10):
            R = ms_corollary_rhs(chi, T)
            d1 = abs(ms_general_rhs(0.5 + 1e-3, 0.5 + 1e-3, T, chi) - R)
            d2 = abs(ms_general_rhs(0.5 + 1e-4, 0.5 + 1e-4, T, chi) - R)
            ratios.append(d1 / d2)
    bad = [r for r in ratios if not 8 <= r <= 12]
    worst = max(abs(r - 10) for r in ratios)
    return not bad, worst, "max |defect ratio - 10|, ratios must lie in [8, 12]"


def check_sandwich(full):
    qs = (3, 4, 5, 7, 8, 11) if full else (3, 5)
    worst = -math.inf
    lower = 0
    n = 0
    for q, chi in _prims(qs):
        for T in (q, 2 * q, 10 * q):
            r = sandwich_check(chi, T)
            worst = max(worst, r.I_total - r.upper_bound)
            lower += r.lower_ok
            n += 1
    return worst <= 1e-6, worst, f"max I - upper; lower side held in {lower}/{n}"


def check_quadratic_sums(full):
    qs = range(3, 101 if full else 21)
    Ts = (10 ** 3, 10 ** 4, 10 ** 5) if full else (10 ** 3,)
    worst = math.inf
    for q, chi in _prims(qs):
        if chi.order != 2:
            continue
        for T in Ts:
            S = restricted_sigma_sum(chi, T).value
            worst = min(worst, S / quadratic_floor(T))
    return worst >= 1, worst, "min restricted sum / (sqrt2 - 1) sqrt T"


def check_sieve_algebra(full):
    top = 10 ** 4 if full else 500
    bad = [Q for Q in range(3, top + 1) if not bal_ram_parameters(Q).ok]
    worst = 0.0
    Ts = (10 ** 3, 10 ** 5) if full else (10 ** 3,)
    for q, chi in _prims((5, 7, 9, 13)):
        for T in Ts:
            r = prime_restricted_identity(chi, T)
            worst = max(worst, abs(r.sum_over_primes - r.progression_form))
    return (not bad) and worst <= 1e-9, worst, f"identity defect; parameter failures {bad[:5]}"


def check_brun_titchmarsh(full):
    Ts = (10 ** 4, 10 ** 5, 10 ** 6) if full else (10 ** 4,)
    table = prime_table(2 * max(Ts))
    worst = 0.0
    for q in range(1, 31):
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            for T in Ts:
                r = brun_titchmarsh_check(q, a, T, T, table)
                worst = max(worst, r.observed / r.bound)
    return worst <= 1, worst, "max observed / bound"


def check_scan(full):
    rows = scan_theorem(3, 300 if full else 30, ScanOptions())
    worst = min(r.realized_constant for r in rows)
    failed = sum(r.suite_status != "pass" for r in rows)
    return worst > 0 and failed == 0, worst, f"min realized constant; {failed} rows failed"


CHECKS = [
    ("char_sum_pair", check_char_sum_pair),
    ("gauss_modulus", check_gauss_modulus),
    ("functional_equation", check_functional_equation),
    ("scattering_unitarity", check_unitarity),
    ("log_derivative_closed_form", check_log_derivative),
    ("fourier_vs_direct", check_fourier_direct),
    ("cusp_vanishing", check_cusp_vanishing),
    ("automorphy", check_automorphy),
    ("ms_eps_limit", check_eps_limit),
    ("sandwich_upper", check_sandwich),
    ("quadratic_restricted_sum", check_quadratic_sums),
    ("sieve_algebra", check_sieve_algebra),
    ("brun_titchmarsh", check_brun_titchmarsh),
    ("scan_positivity", check_scan),
]


def verify_suite(level: str = "quick", inject: str | None = None, seed: int = 0,
                 only: list[str] | None = None) -> SuiteReport:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    if inject is not None and inject not in FAULTS:
        raise ValueError(f"unknown fault {inject!r}")
    full = level == "full"
    results = []
    for name, fn in CHECKS:
        if only is not None and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            if fn is check_fourier_direct:
                ok, worst, detail = fn(full, rho_scale=1.01 if inject == "rho" else 1.0)
            elif fn is check_automorphy:
                ok, worst, detail = fn(full, seed=seed)
            else:
                ok, worst, detail = fn(full)
        except Exception as exc:  # aggregate, never short-circuit
            ok, worst, detail = False, math.nan, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), float(worst), detail,
                                   time.perf_counter() - t0))
    if not results:
        raise ValueError("no checks selected")
    return SuiteReport(level, tuple(results))
