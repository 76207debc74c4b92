import random
from fractions import Fraction

import pytest

from plogbound.errors import InternalConsistencyError
from plogbound.lcm import lcm_upto
from plogbound.pade import (
    AlphaVector,
    B_values_at,
    PadePolynomials,
    build_pade,
    closed_form_delta,
    determinant_delta,
    eval_B_at_one,
    order_check,
    remainder_S,
    remainder_S_series,
    select_nonzero_row,
    sigma_coeffs,
)
from plogbound.padic import PadicValue, padic_valuation

from conftest import random_alpha_vector


def _av(*entries, prime=None, Q=None):
    return AlphaVector.build(prime, [Fraction(e) for e in entries], Q=Q)


def test_alpha_vector_validation():
    with pytest.raises(ValueError):
        _av(Fraction(1, 2), Fraction(1, 2))  # repeated
    with pytest.raises(ValueError):
        _av(0, 1)  # zero entry
    with pytest.raises(ValueError):
        _av(1)  # M = 1
    with pytest.raises(ValueError):
        AlphaVector.build(5, [Fraction(1, 5)])  # v_5 = -1
    av = _av(Fraction(2, 3), Fraction(5, 4))
    assert av.Q == 12
    with pytest.raises(ValueError):
        AlphaVector.build(None, [Fraction(2, 3)], Q=5)  # Q does not clear 3


def test_sigma_hand_values():
    a = Fraction(3, 7)
    assert sigma_coeffs(1, _av(a)) == (a, Fraction(-1))
    b = Fraction(-2, 5)
    assert sigma_coeffs(1, _av(a, b)) == (a * b, -(a + b), Fraction(1))


def test_sigma_majorant(rng):
    # sum |sigma_i| t^i <= prod (|alpha_j| + t)^k at t = 2, exact comparison
    for _ in range(20):
        m = rng.randint(1, 3)
        k = rng.randint(1, 4)
        av = random_alpha_vector(rng, m)
        sigma = sigma_coeffs(k, av)
        lhs = sum(abs(c) * Fraction(2) ** i for i, c in enumerate(sigma))
        rhs = Fraction(1)
        for a in av.entries:
            rhs *= (abs(a) + 2) ** k
        assert lhs <= rhs


def test_build_pade_hand_values():
    a = Fraction(3, 7)
    av = _av(a)
    p0 = build_pade(1, 0, av)
    assert p0.A0 == (Fraction(2), -a)
    assert p0.Aj[0] == (Fraction(2),)
    p1 = build_pade(1, 1, av)
    assert p1.A0 == (Fraction(3), -2 * a)
    assert p1.Aj[0] == (Fraction(3), -a / 2)


def test_degrees(rng):
    for _ in range(20):
        m = rng.randint(1, 3)
        k = rng.randint(1, 4)
        mu = rng.randint(0, m)
        av = random_alpha_vector(rng, m)
        poly = build_pade(k, mu, av)
        assert len(poly.A0) == m * k + 1 and poly.A0[-1] != 0
        for numer in poly.Aj:
            assert len(numer) <= m * k + mu


def test_order_window(rng):
    for _ in range(15):
        m = rng.randint(1, 3)
        k = rng.randint(1, 3)
        mu = rng.randint(0, m)
        av = random_alpha_vector(rng, m)
        poly = build_pade(k, mu, av)
        for j in range(1, m + 1):
            assert order_check(poly, j).ok


def test_order_check_reports_first_nonzero():
    # m = 1, k = 1, mu = 0: the remainder starts at z^2 with coefficient a^2/6,
    # so S(t) = a t R(-t) starts at t^3 with coefficient a^3/6
    a = Fraction(3, 7)
    av = _av(a)
    poly = build_pade(1, 0, av)
    res = order_check(poly, 1, order_target=3)
    assert not res.ok and res.first_nonzero == 2
    # recompute the coefficient directly
    r2 = poly.A0[0] * a ** 2 / 3 + poly.A0[1] * a / 2
    assert r2 == a ** 2 / 6


def test_order_check_zero_polynomials_vacuous():
    av = _av(Fraction(3, 7))
    zero = PadePolynomials(av, 1, 0, (Fraction(0), Fraction(0)),
                           (Fraction(0), Fraction(0)), ((Fraction(0),),))
    assert order_check(zero, 1).ok


def test_eval_B_hand_values():
    a = Fraction(3, 7)
    av = _av(a)
    sys0 = eval_B_at_one(build_pade(1, 0, av))
    assert sys0.B_values == (2 + a, 2 * a)
    sys1 = eval_B_at_one(build_pade(1, 1, av))
    assert sys1.B_values == (6 + 4 * a, 6 * a + a * a)
    # Q = 7, so Q^(mk+m) = 49 clears both
    assert sys0.scaled_B == (49 * (2 + a), 49 * 2 * a)


def test_integrality_random(rng):
    for _ in range(50):
        m = rng.randint(1, 3)
        k = rng.randint(1, 3)
        mu = rng.randint(0, m)
        av = random_alpha_vector(rng, m)
        system = eval_B_at_one(build_pade(k, mu, av))
        assert all(isinstance(s, int) for s in system.scaled_B)


def test_remainder_S_lemma_bound(rng):
    # |S|_p <= (mk+k+1) alpha^(mk+k+1), compared through valuations
    checked = 0
    for _ in range(50):
        m = rng.randint(1, 2)
        k = rng.randint(1, 2)
        mu = rng.randint(0, m)
        j = rng.randint(1, m)
        p = rng.choice([3, 5, 7, 11])
        av = random_alpha_vector(rng, m, prime=p)
        s = remainder_S(k, mu, j, av, target_precision=4)
        n = m * k + k + 1
        a_exp = n * av.min_valuation
        if a_exp >= s.valuation:
            assert p ** (a_exp - s.valuation) <= n
        checked += 1
    assert checked == 50


def test_remainder_S_prime_argument():
    # m = 1, k = 1, mu = 0, alpha = (p): leading term alpha^3/6, so v >= 3
    for p in (5, 7, 11):
        av = AlphaVector.build(p, [Fraction(p)])
        s = remainder_S(1, 0, 1, av, target_precision=4)
        assert s.valuation == 3


def test_remainder_identity_vs_series(rng):
    for _ in range(10):
        m = rng.randint(1, 2)
        k = rng.randint(1, 2)
        mu = rng.randint(0, m)
        j = rng.randint(1, m)
        p = rng.choice([3, 5, 7])
        av = random_alpha_vector(rng, m, prime=p)
        s = remainder_S(k, mu, j, av, target_precision=4)
        k_abs = s.valuation + 3
        assert s.residue(k_abs) == remainder_S_series(k, mu, j, av, k_abs)


def test_determinant_hand_value():
    for a in (Fraction(3, 7), Fraction(1, 5), Fraction(-4, 9)):
        av = _av(a)
        det = determinant_delta(1, av, Fraction(1))
        assert det == a ** 3
        closed = closed_form_delta(1, av, Fraction(1))
        assert abs(closed) == abs(det)
        # the lcm scaling d_1 d_2 = 2 cancels the 1/2! of the bare formula
        assert lcm_upto(1) * lcm_upto(2) == 2


def test_determinant_closed_form(rng):
    for _ in range(12):
        m = rng.randint(1, 2)
        k = rng.randint(1, 3)
        t = rng.choice([Fraction(1), Fraction(2), Fraction(-1, 3)])
        av = random_alpha_vector(rng, m)
        det = determinant_delta(k, av, t)
        closed = closed_form_delta(k, av, t)
        assert abs(det) == abs(closed)
        assert det != 0


def test_select_nonzero_row_hand_case():
    a = Fraction(3, 7)
    av = _av(a)
    system = select_nonzero_row(1, av, (0, 1))
    assert system.mu == 0
    assert system.T == 49 * 2 * a  # Q^2 * B_1(1)
    system2 = select_nonzero_row(1, av, (1, 0))
    assert system2.mu == 0 and system2.T == 49 * (2 + a)


def test_select_nonzero_row_random(rng):
    for _ in range(50):
        m = rng.randint(1, 2)
        k = rng.randint(1, 3)
        av = random_alpha_vector(rng, m)
        lambdas = [0] * (m + 1)
        while not any(lambdas):
            lambdas = [rng.randint(-5, 5) for _ in range(m + 1)]
        system = select_nonzero_row(k, av, tuple(lambdas))
        assert isinstance(system.T, int) and system.T != 0


def test_select_nonzero_row_validates():
    av = _av(Fraction(3, 7))
    with pytest.raises(ValueError):
        select_nonzero_row(1, av, (0, 0))
    with pytest.raises(ValueError):
        select_nonzero_row(1, av, (1,))
