import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eisenbound.characters import enumerate_primitive_characters, sigma_twisted
from eisenbound.sieve import (PreconditionError, PrimeTable, TableLimitError,
                              bal_ram_parameters, brun_titchmarsh_check, complex_floor,
                              complex_lower_constant, complex_rows_csv, prime_counts,
                              prime_restricted_identity, prime_table, quadratic_diagnostic,
                              quadratic_floor, restricted_sigma_sum, sigma0_table,
                              square_count)


def test_prime_counts_examples():
    t = PrimeTable(10 ** 4)
    assert t.pi(100) == 25
    assert t.prime_counts(100, 4, 1) == 11
    assert t.prime_counts(10, 4, 3) == 2
    assert t.self_test()
    assert prime_counts(100, 4, 1) == 11
    with pytest.raises(TableLimitError):
        t.pi(10 ** 5)
    with pytest.raises(PreconditionError):
        t.prime_counts(100, 4, 2)


@pytest.mark.parametrize("q", [1, 6, 12, 30])
def test_residue_counts_sum_to_pi(q):
    t = prime_table(10 ** 5)
    for x in (97, 1000, 54321):
        units = sum(t.prime_counts(x, q, a) for a in range(q) if math.gcd(a, q) == 1)
        ramified = sum(1 for p in t.primes[t.primes <= x] if q % p == 0)
        assert units + ramified == t.pi(x)


def test_sigma0_table_matches_direct():
    for q in (5, 7, 8):
        for chi in enumerate_primitive_characters(q):
            tab = sigma0_table(chi, 40, 80)
            direct = [sigma_twisted(m, 0, chi).value for m in range(40, 81)]
            assert np.allclose(tab, direct, atol=1e-12)
            if chi.is_real:
                assert tab.dtype == np.int64


def test_restricted_sum_quadratic():
    chi = [c for c in enumerate_primitive_characters(5) if c.is_quadratic][0]
    r = restricted_sigma_sum(chi, 100)
    assert r.exact and isinstance(r.value, int)
    assert r.value >= quadratic_floor(100)
    direct = sum(int(round(sigma_twisted(m, 0, chi).value.real)) ** 2 for m in range(50, 101))
    assert restricted_sigma_sum(chi, 50).value == direct


def test_restricted_sum_blocks_agree():
    import eisenbound.sieve as sieve
    chi = enumerate_primitive_characters(7)[1]
    whole = restricted_sigma_sum(chi, 3000).value
    old = sieve._BLOCK
    try:
        sieve._BLOCK = 257
        blocked = restricted_sigma_sum(chi, 3000).value
    finally:
        sieve._BLOCK = old
    assert abs(whole - blocked) < 1e-9 * whole


def test_square_count():
    assert square_count(3) == 1          # 4
    assert square_count(100) == 5        # 100, 121, 144, 169, 196
    assert square_count(2) == 1          # 4


@settings(max_examples=30, deadline=None)
@given(q=st.sampled_from([3, 4, 5, 8, 11, 12, 13]), T=st.integers(1, 5000))
def test_quadratic_sum_dominates_square_count(q, T):
    for chi in enumerate_primitive_characters(q):
        if chi.is_quadratic:
            assert restricted_sigma_sum(chi, T).value >= square_count(T) >= 0


def test_prime_identity_examples():
    for q, T in ((5, 10 ** 3), (7, 10 ** 4)):
        for chi in enumerate_primitive_characters(q):
            r = prime_restricted_identity(chi, T)
            assert abs(r.sum_over_primes - r.progression_form) < 1e-9
            assert r.sum_over_primes <= 4 * r.prime_count + 1e-9


def test_brun_titchmarsh_examples():
    assert brun_titchmarsh_check(3, 1, 10 ** 5, 10 ** 5).ok
    for a in range(30):
        if math.gcd(a, 30) == 1:
            assert brun_titchmarsh_check(30, a, 10 ** 4, 10 ** 4).ok
    assert brun_titchmarsh_check(7, 3, 100, 14).ok
    with pytest.raises(PreconditionError):
        brun_titchmarsh_check(7, 3, 100, 13)
    with pytest.raises(PreconditionError):
        brun_titchmarsh_check(6, 3, 100, 50)


def test_bal_ram_examples():
    p3 = bal_ram_parameters(3)
    assert (p3.M, p3.X, p3.slack) == (1, Fraction(1, 3), Fraction(9, 10))
    p4 = bal_ram_parameters(4)
    assert (p4.M, p4.X, p4.slack) == (1, Fraction(1, 2), Fraction(7, 20))
    assert p3.ok and p4.ok
    with pytest.raises(ValueError):
        bal_ram_parameters(2)


@settings(max_examples=200, deadline=None)
@given(Q=st.integers(3, 10 ** 6))
def test_bal_ram_invariants_property(Q):
    p = bal_ram_parameters(Q)
    assert p.ok
    assert complex_floor(Q, 1000.0) > 0


def test_complex_lower_constant_examples():
    rows = []
    for q in (5, 7):
        for chi in enumerate_primitive_characters(q):
            if chi.order >= 3:
                r = complex_lower_constant(chi, K=4)
                assert r.T == q ** 4 and not r.partial
                assert r.ratio >= 1 and r.prime_count_ok
                rows.append(r)
    capped = complex_lower_constant(enumerate_primitive_characters(7)[1], K=4, cap=1000)
    assert capped.partial and capped.T == 1000
    text = complex_rows_csv(rows)
    assert text.splitlines()[0] == "q,chi_id,Q,T,sum,floor,ratio"
    assert len(text.splitlines()) == len(rows) + 1


def test_quadratic_diagnostic():
    (c3,) = enumerate_primitive_characters(3)
    d = quadratic_diagnostic(c3, 10 ** 4)
    assert d.subtracted >= 0 and d.main_term > 0
    assert d.subtracted <= d.subtracted_bt_estimate
    (c4,) = enumerate_primitive_characters(4)
    d4 = quadratic_diagnostic(c4, 10 ** 5)
    assert d4.subtracted >= 0
