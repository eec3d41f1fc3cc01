"""Exact Dirichlet character arithmetic.

A character mod q is stored through its values on the CRT generators of
(Z/qZ)^x: a least primitive root for each odd prime power, and the pair
(-1, 5) for 2^k with k >= 3. Values are roots of unity e(k/N) with a common
denominator N (the exponent of the unit group), so order, parity, conductor
and multiplicativity are all decided in integer arithmetic.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np
from sympy import divisors, factorint, primitive_root


def e(x: float) -> complex:
    """e(x) = exp(2 pi i x)."""
    return cmath.exp(2j * math.pi * x)


def moebius(n: int) -> int:
    """Moebius function mu(n) by factorization."""
    if n < 1:
        raise ValueError("moebius requires n >= 1")
    fac = factorint(n)
    if any(k > 1 for k in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p in factorint(n):
        out = out // p * (p - 1)
    return out


@dataclass(frozen=True)
class _Component:
    prime: int
    power: int
    orders: tuple[int, ...]   # cyclic orders of the generators
    exps: tuple[int, ...]     # chi(g_i) = e(exps[i] / orders[i])

    @property
    def modulus(self) -> int:
        return self.prime ** self.power

    @property
    def conductor(self) -> int:
        p, k = self.prime, self.power
        if p != 2:
            n = self.orders[0]
            d = n // math.gcd(self.exps[0], n)
            if d == 1:
                return 1
            j = 0
            while d % p == 0:
                d //= p
                j += 1
            return p ** (j + 1)
        if k == 1:
            return 1
        if k == 2:
            return 4 if self.exps[0] else 1
        b, c = self.exps
        d5 = self.orders[1] // math.gcd(c, self.orders[1])
        if d5 > 1:
            return 4 * d5
        return 4 if b else 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus


@lru_cache(maxsize=None)
def _component_logs(p: int, k: int) -> tuple[tuple[int, ...], tuple[np.ndarray, ...]]:
    """Generator orders and discrete-log tables (-1 off units) mod p^k."""
    pk = p ** k
    if p != 2:
        g = primitive_root(pk)
        n = pk // p * (p - 1)
        log = np.full(pk, -1, dtype=np.int64)
        x = 1
        for j in range(n):
            log[x] = j
            x = x * g % pk
        return (n,), (log,)
    if k == 1:
        return (), ()
    if k == 2:
        log = np.full(4, -1, dtype=np.int64)
        log[1], log[3] = 0, 1
        return (2,), (log,)
    n5 = 2 ** (k - 2)
    log_m1 = np.full(pk, -1, dtype=np.int64)
    log_5 = np.full(pk, -1, dtype=np.int64)
    x = 1
    for c in range(n5):
        for b in (0, 1):
            u = x if b == 0 else pk - x
            log_m1[u], log_5[u] = b, c
        x = x * 5 % pk
    return (2, n5), (log_m1, log_5)


@lru_cache(maxsize=None)
def _group_data(q: int):
    """Factorization, generator orders, group exponent N and CRT log tables."""
    comps = []
    for p, k in sorted(factorint(q).items()):
        orders, logs = _component_logs(p, k)
        comps.append((p, k, orders, logs))
    all_orders = [n for c in comps for n in c[2]]
    denom = math.lcm(*all_orders) if all_orders else 1
    a = np.arange(q)
    unit = np.array([math.gcd(int(x), q) == 1 for x in a], dtype=bool)
    # per-generator contributions: log_i(a mod p^k) * (N / order_i)
    cols = []
    for p, k, orders, logs in comps:
        for n, log in zip(orders, logs):
            cols.append(log[a % p ** k] * (denom // n))
    basis = np.stack(cols) if cols else np.zeros((0, q), dtype=np.int64)
    return comps, denom, unit, basis


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    denominator: int
    exponents: tuple                # int numerator mod denominator, or None off units
    parity: int
    order: int
    conductor: int
    components: tuple = field(default=(), repr=False, compare=False)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def kappa(self) -> int:
        return self.parity

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def exponent(self, n: int) -> Fraction | None:
        """chi(n) = e(exponent), or None when gcd(n, q) > 1."""
        k = self.exponents[n % self.modulus]
        return None if k is None else Fraction(k, self.denominator)

    def __call__(self, n: int) -> complex:
        k = self.exponents[n % self.modulus]
        if k is None:
            return 0j
        return _root_of_unity(k, self.denominator)

    @cached_property
    def values(self) -> np.ndarray:
        """Complex values chi(0), ..., chi(q-1)."""
        return np.array([self(a) for a in range(self.modulus)], dtype=complex)

    @cached_property
    def real_values(self) -> np.ndarray:
        """Integer values for real characters (0, +1, -1)."""
        if not self.is_real:
            raise ValueError("character is not real")
        out = np.zeros(self.modulus, dtype=np.int64)
        for a, k in enumerate(self.exponents):
            if k is not None:
                out[a] = 1 if k == 0 else -1
        return out

    def conj(self) -> DirichletCharacter:
        comps = tuple(
            _Component(c.prime, c.power, c.orders,
                       tuple((-x) % n for x, n in zip(c.exps, c.orders)))
            for c in self.components)
        return _from_components(self.modulus, comps)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        comps = tuple(
            _Component(a.prime, a.power, a.orders,
                       tuple((x + y) % n for x, y, n in zip(a.exps, b.exps, a.orders)))
            for a, b in zip(self.components, other.components))
        return _from_components(self.modulus, comps)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "conductor": self.conductor,
            "parity": self.parity,
            "order": self.order,
            "denominator": self.denominator,
            "exponent_table": list(self.exponents),
        }

    @classmethod
    def from_json(cls, data: dict) -> DirichletCharacter:
        """Rebuild from a serialized table (generator data is recovered)."""
        q = data["modulus"]
        table = tuple(data["exponent_table"])
        for chi in enumerate_characters(q):
            if chi.exponents == table and chi.denominator == data["denominator"]:
                return chi
        raise ValueError("exponent table does not define a character")


@lru_cache(maxsize=4096)
def _root_of_unity(k: int, n: int) -> complex:
    # exact values where they exist, to keep real characters real
    r = Fraction(k, n)
    if r == 0:
        return 1 + 0j
    if r == Fraction(1, 2):
        return -1 + 0j
    if r == Fraction(1, 4):
        return 1j
    if r == Fraction(3, 4):
        return -1j
    return e(k / n)


def _from_components(q: int, comps: tuple[_Component, ...]) -> DirichletCharacter:
    _, denom, unit, basis = _group_data(q)
    coeffs = np.array([x for c in comps for x in c.exps], dtype=np.int64)
    nums = (coeffs @ basis) % denom if len(coeffs) else np.zeros(q, dtype=np.int64)
    exponents = tuple(int(k) if u else None for k, u in zip(nums, unit))
    g = denom
    for k in nums[unit]:
        g = math.gcd(g, int(k))
    order = denom // g
    minus_one = exponents[(q - 1) % q]
    parity = 0 if minus_one == 0 else 1
    conductor = math.prod(c.conductor for c in comps) if comps else 1
    return DirichletCharacter(q, denom, exponents, parity, order, conductor, comps)


def _component_choices(p, k, orders, primitive_only):
    for exps in itertools.product(*(range(n) for n in orders)):
        comp = _Component(p, k, orders, tuple(exps))
        if not primitive_only or comp.is_primitive:
            yield comp


def _enumerate(q: int, primitive_only: bool) -> list[DirichletCharacter]:
    if q < 1:
        raise ValueError("modulus must be positive")
    comps, _, _, _ = _group_data(q)
    choices = [list(_component_choices(p, k, orders, primitive_only))
               for p, k, orders, _ in comps]
    chars = [_from_components(q, tuple(combo)) for combo in itertools.product(*choices)]
    chars.sort(key=lambda c: tuple(-1 if k is None else k for k in c.exponents))
    return chars


@lru_cache(maxsize=512)
def _primitive_cached(q: int) -> tuple[DirichletCharacter, ...]:
    return tuple(_enumerate(q, True))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in deterministic order."""
    return _enumerate(q, False)


def enumerate_primitive_characters(q: int) -> list[DirichletCharacter]:
    """Primitive characters mod q, sorted lexicographically by exponent table.

    q = 2 (and q = 2 mod 4 in general) yields an empty list.
    """
    return list(_primitive_cached(q))


def principal_character(q: int) -> DirichletCharacter:
    comps, _, _, _ = _group_data(q)
    return _from_components(q, tuple(_Component(p, k, orders, (0,) * len(orders))
                                     for p, k, orders, _ in comps))


def character_id(chi: DirichletCharacter) -> int:
    """Index of a primitive character in ``enumerate_primitive_characters``."""
    return _primitive_cached(chi.modulus).index(chi)


def decompose(chi: DirichletCharacter, v: int) -> tuple[DirichletCharacter, DirichletCharacter]:
    """Split chi mod q = v w, (v, w) = 1, as chi = chi_v chi_w."""
    q = chi.modulus
    if v < 1 or q % v:
        raise ValueError(f"{v} does not divide {q}")
    w = q // v
    if math.gcd(v, w) != 1:
        raise ValueError(f"gcd({v}, {w}) != 1")
    comps_v = tuple(c for c in chi.components if v % c.prime == 0)
    comps_w = tuple(c for c in chi.components if v % c.prime)
    return _from_components(v, comps_v), _from_components(w, comps_w)


class GaussSum(NamedTuple):
    value: complex
    conjugation_defect: float


def gauss_sum(chi: DirichletCharacter) -> GaussSum:
    """tau(chi) = sum_a chi(a) e(a/q), plus |conj(tau(conj chi)) - chi(-1) tau(chi)|."""
    if not chi.is_primitive:
        raise ValueError("Gauss sum modulus identity requires a primitive character")
    tau = _gauss_raw(chi)
    tau_bar = _gauss_raw(chi.conj())
    defect = abs(tau_bar.conjugate() - chi(-1) * tau)
    return GaussSum(tau, defect)


def _gauss_raw(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    phases = np.exp(2j * np.pi * np.arange(q) / q)
    return complex(np.dot(chi.values, phases))


@dataclass(frozen=True)
class TwistedDivisorSum:
    m: int
    s: complex
    value: complex


def sigma_twisted(m: int, s, chi: DirichletCharacter) -> TwistedDivisorSum:
    """sigma_s(m, chi) = sum_{d | m} d^s chi(m/d)."""
    if m < 1:
        raise ValueError("sigma_twisted requires m >= 1")
    s = complex(s)
    if s == 0:
        total = sum(chi(m // d) for d in divisors(m))
    else:
        total = sum(d ** s * chi(m // d) for d in divisors(m))
    return TwistedDivisorSum(m, s, complex(total))


def char_sum_pair(chi: DirichletCharacter, m: int, c: int) -> tuple[complex, complex]:
    """Both sides of the Ramanujan-type character sum identity.

    lhs = sum_{d mod c, (c,d)=1} chi(d) e(md/c)
    rhs = chi(sgn m) tau(chi) sum_{d | (|m|, c/q)} d conj(chi)(|m|/d) chi(c/(dq)) mu(c/(dq))
    """
    q = chi.modulus
    if m == 0:
        raise ValueError("m must be nonzero")
    if c < 1 or c % q:
        raise ValueError(f"c={c} is not a positive multiple of q={q}")
    d = np.array([x for x in range(c) if math.gcd(x, c) == 1], dtype=np.int64)
    lhs = complex(np.sum(chi.values[d % q] * np.exp(2j * np.pi * ((m * d) % c) / c)))
    tau = gauss_sum(chi).value
    am = abs(m)
    acc = 0j
    for dd in divisors(math.gcd(am, c // q)):
        r = c // (dd * q)
        acc += dd * chi(am // dd).conjugate() * chi(r) * moebius(r)
    rhs = chi(1 if m > 0 else -1) * tau * acc
    return lhs, complex(rhs)
