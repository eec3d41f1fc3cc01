import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eisenbound.characters import enumerate_primitive_characters, gauss_sum, principal_character
from eisenbound.eisenstein import (MembershipError, OutsideValidityError, TruncationError,
                                   automorphy_defect, automorphy_sample, cocycle_defect,
                                   constant_term_components, count_translates, direct_mode,
                                   eval_direct, eval_fourier, height_pair_check, predicted_mode,
                                   random_gamma0, rho_coefficient, scaling_matrix,
                                   scattering_log_derivative, scattering_phi, singular_cusps,
                                   translate_bound, truncated_eval_strip)
from eisenbound.lfunctions import dirichlet_l
from eisenbound.special_functions import UnsupportedCaseError

# sqrt(pi) Gamma(5/2)/Gamma(3) zeta(5)/zeta(6), mpmath
PHI_Q1_AT_3 = 1.200776588887609376389456


def chars(q, parity=None):
    return [c for c in enumerate_primitive_characters(q) if parity is None or c.parity == parity]


def test_scaling_matrices():
    c = scaling_matrix(12, 3)
    assert c.w == 4
    assert c.scaling_matrix == ((2.0, 0.0), (6.0, 0.5))
    assert abs(c.determinant - 1) < 1e-15
    assert scaling_matrix(12, 12).is_infinity
    assert scaling_matrix(12, 12).scaling_matrix == ((1.0, 0.0), (0.0, 1.0))
    assert [x.v for x in singular_cusps(12)] == [1, 3, 4, 12]
    with pytest.raises(ValueError):
        scaling_matrix(12, 2)
    with pytest.raises(ValueError):
        scaling_matrix(12, 5)


def test_rho_zero_for_negative_odd_modes():
    for chi in chars(5, 1):
        assert rho_coefficient(-1, 0.5, chi).value == 0
        assert rho_coefficient(-7, 0.5, chi).value == 0


def test_rho_q4_composition():
    (chi,) = chars(4)
    got = rho_coefficient(1, 0.5, chi).value
    tau_bar = gauss_sum(chi.conj()).value
    expected = 1j ** -1 * tau_bar * math.sqrt(math.pi) / (4 * dirichlet_l(1, chi.conj()))
    assert abs(got - expected) < 1e-13


@pytest.mark.parametrize("s", [0.8, 3.0])
def test_rho_modulus_conjugation_symmetry(s):
    for chi in chars(5):
        for m in (1, 2, 3, 6):
            a = abs(rho_coefficient(m, s, chi).value)
            b = abs(rho_coefficient(-m, s, chi.conj()).value)
            if chi.parity == 0:
                assert abs(a - b) < 1e-12 * max(a, 1e-300)


def test_fourier_period_and_unsupported():
    chi = chars(5, 0)[0]
    a = eval_fourier(0.3 + 0.9j, 3, chi).value
    b = eval_fourier(1.3 + 0.9j, 3, chi).value
    assert abs(a - b) < 1e-12
    with pytest.raises(UnsupportedCaseError):
        eval_fourier(0.3 + 0.9j, 3, chars(5, 1)[0])
    with pytest.raises(TruncationError):
        eval_fourier(0.3 + 0.04j, 3, chi)


def test_fourier_matches_direct_q5():
    for chi in chars(5, 0):
        z = 0.3 + 0.9j
        assert abs(eval_fourier(z, 3, chi).value - eval_direct(z, 3, chi).value) < 1e-9
    (c3,) = chars(3)
    z = 0.1 + 0.8j
    modes = [direct_mode(m, 0.8, 3, c3) for m in (1, 2)]
    pred = [predicted_mode(m, 0.8, 3, c3) for m in (1, 2)]
    assert max(abs(a - b) for a, b in zip(modes, pred)) < 1e-9


def test_direct_leading_term():
    chi = chars(5, 0)[0]
    y = 4.0
    v = eval_direct(complex(0.2, y), 3, chi).value
    assert abs(v - y ** 3) < 1e-8 * y ** 3


def test_direct_sum_tail_bound_is_reported():
    chi = chars(7, 0)[0]
    res = eval_direct(0.25 + 0.8j, 3, chi, tol=1e-10)
    assert res.tail_bound <= 1e-10 and res.rows > 0


def test_cusp_vanishing_q12():
    (chi,) = chars(12)
    for v in (3, 4):
        delta, coeff = constant_term_components(1.0, 3, chi, scaling_matrix(12, v))
        assert delta == 0 and abs(coeff) < 1e-10
    _, c1 = constant_term_components(1.0, 3, chi, scaling_matrix(12, 1))
    assert abs(c1 - scattering_phi(3, chi).value) < 1e-10
    delta, c_inf = constant_term_components(1.0, 3, chi, scaling_matrix(12, 12))
    assert delta == 1 and abs(c_inf) < 1e-10


def test_cusp_value_independent_of_height():
    (chi,) = chars(12)
    cusp = scaling_matrix(12, 1)
    a = constant_term_components(0.9, 3, chi, cusp)[1]
    b = constant_term_components(1.3, 3, chi, cusp)[1]
    assert abs(a - b) < 1e-10


def test_scattering_unitarity_and_symmetry():
    for q in (3, 5, 7, 8, 12):
        for chi in chars(q):
            for t in (0.0, 0.5, 1.0):
                assert abs(abs(scattering_phi(0.5 + 1j * t, chi).value) - 1) < 1e-8
            s = 0.8 + 0.3j
            lhs = scattering_phi(s.conjugate(), chi).value.conjugate()
            rhs = chi(-1) * scattering_phi(s, chi.conj()).value
            assert abs(lhs - rhs) < 1e-12 * abs(lhs)


def test_scattering_q1_branch():
    v = scattering_phi(3, principal_character(1)).value
    assert abs(v - PHI_Q1_AT_3) < 1e-9


def test_log_derivative_closed_form():
    for q in (3, 4, 5, 7, 8, 11):
        for chi in chars(q):
            r = scattering_log_derivative(chi)
            assert r.relative_defect < 1e-6
            assert abs(r.numeric_imag) < 1e-8


def test_log_derivative_nonpositive_over_scan():
    from eisenbound.lfunctions import l_log_derivative_at_one
    from eisenbound.special_functions import digamma
    # closed form assembled directly to keep this loop cheap
    for q in range(3, 301):
        for chi in chars(q):
            ld = l_log_derivative_at_one(chi).value.real
            val = (-3 * math.log(q) + 2 * math.log(math.pi)
                   - 2 * digamma((1 + chi.parity) / 2).real - 4 * ld)
            assert val <= 0


def test_printed_log_derivative_variant_differs():
    # kept for transparency; it does not match the numeric derivative
    chi = chars(5, 0)[0]
    r = scattering_log_derivative(chi)
    assert abs(r.printed_closed_form - r.numeric) > 0.5


def test_truncated_strip_branches():
    chi = chars(5, 0)[0]
    T = 2.0
    z = complex(0.3, T)
    assert truncated_eval_strip(z, 0.5, chi, T) == eval_fourier(z, 0.5, chi).value
    z2 = complex(0.3, 2 * T)
    expected = eval_fourier(z2, 0.5, chi).value - math.sqrt(2 * T)
    assert abs(truncated_eval_strip(z2, 0.5, chi, T) - expected) < 1e-15
    with pytest.raises(OutsideValidityError):
        truncated_eval_strip(0.3 + 0.4j, 0.5, chi, T)
    xs = np.arange(64) / 64
    vals = [truncated_eval_strip(complex(x, 3.0), 0.5, chi, T) for x in xs]
    assert abs(np.mean(vals)) < 1e-12


def test_automorphy_examples():
    chi = chars(5, 0)[0]
    z = 0.2 + 0.7j
    assert automorphy_defect(((1, 0), (0, 1)), z, 0.5, chi) == 0
    assert automorphy_defect(((1, 1), (0, 1)), z, 0.5, chi) < 1e-10
    with pytest.raises(MembershipError):
        automorphy_defect(((1, 1), (1, 2)), z, 0.5, chi)
    rng = random.Random(7)
    for chi in chars(5):
        for _ in range(10):
            g, z = automorphy_sample(5, rng)
            assert automorphy_defect(g, z, 0.5, chi) < 1e-6


def test_automorphy_uses_chi_not_conjugate():
    # unit generators make d run over all residues, so chi and conj chi differ
    rng = random.Random(1)
    chi = chars(5, 1)[0]
    worst = 0.0
    for _ in range(10):
        g, z = automorphy_sample(5, rng)
        gz = (g[0][0] * z + g[0][1]) / (g[1][0] * z + g[1][1])
        j = (g[1][0] * z + g[1][1]) / abs(g[1][0] * z + g[1][1])
        wrong = chi.conj()(g[1][1]) * j * eval_fourier(z, 0.5, chi).value
        worst = max(worst, abs(eval_fourier(gz, 0.5, chi).value - wrong))
    assert worst > 1e-3


@settings(max_examples=40, deadline=None)
@given(q=st.integers(1, 30), seed=st.integers(0, 10 ** 6))
def test_random_gamma0_membership(q, seed):
    g = random_gamma0(q, random.Random(seed), max_c=2 * q)
    (a, b), (c, d) = g
    assert a * d - b * c == 1 and c % q == 0 and c > 0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10 ** 6), theta=st.floats(0.1, 3.0))
def test_cocycle(seed, theta):
    rng = random.Random(seed)
    g1, g2 = random_gamma0(4, rng), random_gamma0(4, rng)
    assert cocycle_defect(g1, g2, complex(0.1, 0.2 + theta)) < 1e-12


def test_random_gamma0_rejects_impossible_bounds():
    with pytest.raises(ValueError):
        random_gamma0(20, random.Random(0), max_c=15)
    with pytest.raises(ValueError):
        automorphy_sample(20, random.Random(0))


def test_count_translates_examples():
    assert count_translates(1j, 0.9, 1) == 2
    assert count_translates(0.5j, 0.999, 50) == 0
    with pytest.raises(ValueError):
        count_translates(1j, 0.0, 3)


@settings(max_examples=60, deadline=None)
@given(q=st.integers(1, 40), x=st.floats(0, 1), y=st.floats(0.05, 3), eta=st.floats(0.05, 1))
def test_count_translates_bound(q, x, y, eta):
    assert count_translates(complex(x, y), eta, q) < translate_bound(q, eta)


def test_height_pairs_q12():
    b, c = scaling_matrix(12, 3), scaling_matrix(12, 4)
    rng = random.Random(3)
    for _ in range(50):
        g = random_gamma0(12, rng)
        z = complex(rng.uniform(0, 1), rng.uniform(0.05, 3))
        hp = height_pair_check(b, c, g, z)
        assert not hp.is_translation
        assert hp.product <= 1 + 1e-12
        assert hp.product <= 1 / (b.w * c.w) + 1e-12
    inf = scaling_matrix(12, 12)
    hp = height_pair_check(inf, inf, ((1, 3), (0, 1)), 0.2 + 0.5j)
    assert hp.is_translation and abs(hp.ratio - 1) < 1e-15
