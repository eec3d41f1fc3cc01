"""Prime counts in progressions and restricted divisor sums.

sum_{T <= m <= 2T} |sigma_0(m, chi)|^2 is computed by a divisor sieve (outer
loop over divisors, inner over multiples) in the compiled kernel, in blocks
so memory stays bounded for T up to the default cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .characters import DirichletCharacter, character_id, euler_phi

DEFAULT_T_CAP = 2 * 10 ** 7
_BLOCK = 1 << 22


class TableLimitError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class PrimeTable:
    """Primality bitset up to ``limit`` with counts pi(x; q, a) on demand."""

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("limit must be >= 2")
        self.limit = int(limit)
        self.is_prime = kernels.prime_sieve(self.limit)
        self.primes = np.flatnonzero(self.is_prime)
        self._residues: dict[int, np.ndarray] = {}

    def pi(self, x: float) -> int:
        x = math.floor(x)
        if x > self.limit:
            raise TableLimitError(f"x={x} exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def _residue_array(self, q: int) -> np.ndarray:
        if q not in self._residues:
            self._residues[q] = self.primes % q
        return self._residues[q]

    def prime_counts(self, x: float, q: int, a: int) -> int:
        """pi(x; q, a) = #{p <= x : p = a mod q}."""
        if math.gcd(a, q) != 1:
            raise PreconditionError(f"gcd({a}, {q}) != 1")
        n = self.pi(x)
        return int(np.count_nonzero(self._residue_array(q)[:n] == a % q))

    def counts_by_residue(self, x: float, q: int) -> np.ndarray:
        """Array c[a] = pi(x; q, a) for every residue a (non-units included)."""
        n = self.pi(x)
        return np.bincount(self._residue_array(q)[:n], minlength=q)

    def self_test(self, n: int = 10 ** 4) -> bool:
        n = min(n, self.limit)
        trial = [k for k in range(2, n + 1)
                 if all(k % d for d in range(2, math.isqrt(k) + 1))]
        return bool(np.array_equal(self.primes[self.primes <= n], np.array(trial)))


_TABLE: PrimeTable | None = None


def prime_table(limit: int) -> PrimeTable:
    """Shared table covering at least ``limit`` (rebuilt larger when needed)."""
    global _TABLE
    if _TABLE is None or _TABLE.limit < limit:
        _TABLE = PrimeTable(max(int(limit), 10 ** 4))
    return _TABLE


def prime_counts(limit: float, q: int, a: int, table: PrimeTable | None = None) -> int:
    table = table or prime_table(int(limit))
    return table.prime_counts(limit, q, a)


# ------------------------------------------------------------ divisor sums


def sigma0_table(chi: DirichletCharacter, lo: int, hi: int) -> np.ndarray:
    """sigma_0(m, chi) = sum_{k | m} chi(k) for lo <= m <= hi.

    Exact int64 for real characters, complex128 otherwise.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    if chi.is_real:
        return kernels.divisor_char_sum_int(lo, hi, chi.real_values)
    return kernels.divisor_char_sum_complex(lo, hi, chi.values)


@dataclass(frozen=True)
class RestrictedSum:
    T: float
    lo: int
    hi: int
    value: int | float
    exact: bool


def restricted_sigma_sum(chi: DirichletCharacter, T: float,
                         cap: int = DEFAULT_T_CAP) -> RestrictedSum:
    """sum_{T <= m <= 2T} |sigma_0(m, chi)|^2 (an exact integer for real chi)."""
    if T < 1:
        raise ValueError("T must be >= 1")
    if T > cap:
        raise TableLimitError(f"T={T} exceeds the divisor-table cap {cap}")
    lo, hi = math.ceil(T), math.floor(2 * T)
    if hi < lo:
        return RestrictedSum(T, lo, hi, 0, chi.is_real)
    if chi.is_real:
        total = 0
        for b in range(lo, hi + 1, _BLOCK):
            s0 = sigma0_table(chi, b, min(hi, b + _BLOCK - 1))
            total += int(np.dot(s0, s0))
        return RestrictedSum(T, lo, hi, total, True)
    total = 0.0
    for b in range(lo, hi + 1, _BLOCK):
        s0 = sigma0_table(chi, b, min(hi, b + _BLOCK - 1))
        total += float(np.sum(s0.real ** 2 + s0.imag ** 2))
    return RestrictedSum(T, lo, hi, total, False)


def quadratic_floor(T: float) -> float:
    """(sqrt 2 - 1) sqrt T, the square-restricted lower bound for real chi."""
    return (math.sqrt(2) - 1) * math.sqrt(T)


def square_count(T: float) -> int:
    """#{n : T <= n^2 <= 2T}."""
    return math.isqrt(math.floor(2 * T)) - math.isqrt(math.ceil(T) - 1)


# ------------------------------------------------------------ prime identity


@dataclass(frozen=True)
class PrimeIdentity:
    sum_over_primes: float       # sum_{T < p <= 2T} |1 + chi(p)|^2
    progression_form: float      # 2 sum_a (1 + Re chi(a)) (pi(2T;q,a) - pi(T;q,a))
    prime_count: int             # pi(2T) - pi(T)


def prime_restricted_identity(chi: DirichletCharacter, T: float,
                              table: PrimeTable | None = None) -> PrimeIdentity:
    """Both sides of the prime-restricted identity, primes in (T, 2T].

    The interval is half-open to match pi(2T) - pi(T); primes dividing q
    are excluded on both sides (the identity uses |chi(p)| = 1).
    """
    q = chi.modulus
    table = table or prime_table(int(2 * T))
    lo, hi = table.pi(T), table.pi(2 * T)
    ps = table.primes[lo:hi]
    vals = chi.values[ps % q]
    unit = np.abs(vals) > 0
    lhs = float(np.sum(np.abs(1 + vals[unit]) ** 2))
    diff = table.counts_by_residue(2 * T, q) - table.counts_by_residue(T, q)
    a = np.arange(q)
    units = np.array([math.gcd(int(x), q) == 1 for x in a])
    rhs = float(2 * np.sum((1 + chi.values.real[units]) * diff[units]))
    return PrimeIdentity(lhs, rhs, hi - lo)


# ------------------------------------------------------------ Brun-Titchmarsh


def brun_titchmarsh_bound(q: int, y: float) -> float:
    """2y / (phi(q) log(y/q)) * (1 + 8/log(y/q))."""
    lg = math.log(y / q)
    return 2 * y / (euler_phi(q) * lg) * (1 + 8 / lg)


@dataclass(frozen=True)
class BrunTitchmarshResult:
    observed: int
    bound: float
    ok: bool


def brun_titchmarsh_check(q: int, a: int, x: float, y: float,
                          table: PrimeTable | None = None) -> BrunTitchmarshResult:
    """pi(x + y; q, a) - pi(x; q, a) against the Brun-Titchmarsh bound."""
    if math.gcd(a, q) != 1:
        raise PreconditionError(f"gcd({a}, {q}) != 1")
    if x < 2:
        raise PreconditionError("need x >= 2")
    if y < 2 * q:
        raise PreconditionError(f"need y >= 2q (y={y}, q={q})")
    table = table or prime_table(int(x + y))
    observed = table.prime_counts(x + y, q, a) - table.prime_counts(x, q, a)
    bound = brun_titchmarsh_bound(q, y)
    return BrunTitchmarshResult(observed, bound, observed <= bound)


# ------------------------------------------------------------ parameter algebra


@dataclass(frozen=True)
class BalRamParams:
    Q: int
    delta: Fraction
    M: int
    X: Fraction

    @property
    def slack(self) -> Fraction:
        """1 - delta - 2(1 + delta) X + 2(1 + delta)/Q."""
        d = self.delta
        return 1 - d - 2 * (1 + d) * self.X + 2 * (1 + d) / Fraction(self.Q)

    def invariants(self) -> dict[str, bool]:
        return {
            "M_range": 1 <= self.M <= self.Q // 2,
            "X_range": Fraction(1, 33) <= self.X <= Fraction(23, 33),
            "slack_ge_delta": self.slack >= self.delta,
        }

    @property
    def ok(self) -> bool:
        return all(self.invariants().values())


def bal_ram_parameters(Q: int, delta: Fraction = Fraction(1, 10)) -> BalRamParams:
    """M = floor((1+4 delta)/(2(1+delta)) Q/2 + 1/2), X = (Q - 2M)/Q, exactly."""
    if Q < 3:
        raise ValueError("Q must be >= 3")
    delta = Fraction(delta)
    M = math.floor((1 + 4 * delta) / (2 * (1 + delta)) * Fraction(Q, 2) + Fraction(1, 2))
    X = Fraction(Q - 2 * M, Q)
    return BalRamParams(Q, delta, M, X)


def complex_floor(Q: int, T: float) -> float:
    """2 (1 - cos(pi X)) delta T / log T with the parameters for order Q."""
    p = bal_ram_parameters(Q)
    return 2 * (1 - math.cos(math.pi * float(p.X))) * float(p.delta) * T / math.log(T)


@dataclass(frozen=True)
class ComplexLowerConstant:
    q: int
    chi_id: int
    Q: int
    K: float
    T: float
    partial: bool                # T was capped below q^K
    restricted_sum: float
    floor: float
    ratio: float
    prime_count: int
    prime_count_floor: float     # (1 - delta) T / log T
    prime_count_ok: bool


def complex_lower_constant(chi: DirichletCharacter, K: float = 4,
                           cap: int = DEFAULT_T_CAP) -> ComplexLowerConstant:
    Q = chi.order
    if Q < 3:
        raise ValueError("character must be complex (order >= 3)")
    q = chi.modulus
    T = float(q) ** K
    partial = T > cap
    if partial:
        T = float(cap)
    S = float(restricted_sigma_sum(chi, T, cap).value)
    floor = complex_floor(Q, T)
    table = prime_table(int(2 * T))
    n_p = table.pi(2 * T) - table.pi(T)
    delta = float(bal_ram_parameters(Q).delta)
    pc_floor = (1 - delta) * T / math.log(T)
    return ComplexLowerConstant(q, character_id(chi), Q, K, T, partial, S, floor, S / floor,
                                n_p, pc_floor, n_p >= pc_floor)


@dataclass(frozen=True)
class QuadraticDiagnostic:
    q: int
    T: float
    main_term: int               # 2 (pi(2T) - pi(T))
    subtracted: int              # 2 sum_{chi(a) = -1} (pi(2T;q,a) - pi(T;q,a))
    subtracted_bt_estimate: float
    guaranteed_floor: float      # main_term - subtracted_bt_estimate, may be negative


def quadratic_diagnostic(chi: DirichletCharacter, T: float,
                         table: PrimeTable | None = None) -> QuadraticDiagnostic:
    """How far Brun-Titchmarsh alone gets for a quadratic character."""
    if not chi.is_quadratic:
        raise ValueError("character must be quadratic")
    q = chi.modulus
    table = table or prime_table(int(2 * T))
    main = 2 * (table.pi(2 * T) - table.pi(T))
    diff = table.counts_by_residue(2 * T, q) - table.counts_by_residue(T, q)
    neg = [a for a in range(q) if chi.real_values[a] == -1]
    sub = 2 * int(sum(diff[a] for a in neg))
    bt = 2 * len(neg) * brun_titchmarsh_bound(q, T)
    return QuadraticDiagnostic(q, T, main, sub, bt, main - bt)


def complex_rows_csv(rows: list[ComplexLowerConstant]) -> str:
    lines = ["q,chi_id,Q,T,sum,floor,ratio"]
    for r in rows:
        lines.append(f"{r.q},{r.chi_id},{r.Q},{r.T:.17g},{r.restricted_sum:.17g},"
                     f"{r.floor:.17g},{r.ratio:.17g}")
    return "\n".join(lines) + "\n"
