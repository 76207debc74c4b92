from dataclasses import replace
from fractions import Fraction

import pytest

from plogbound.bounds import ProblemInstance, certify
from plogbound.errors import BudgetExceededError
from plogbound.harness import (
    eval_linear_form,
    exhaustive_min,
    pipeline_check,
    reference_example_1,
    reference_example_2,
    reference_example_3,
    reproduce_examples,
    sample_verify,
)
from plogbound.pade import AlphaVector
from plogbound.padic import padic_log_residue, _vp_int

from conftest import random_alpha_vector


def _instance(p, entries, Q=None, **kwargs):
    av = AlphaVector.build(p, [Fraction(e) for e in entries], Q=Q)
    return ProblemInstance.build(p, av, **kwargs)


def test_eval_constant_term_only():
    inst = _instance(5, [5], H=10, lambdas=(1, 0))
    res = eval_linear_form(inst)
    assert res.pinned and res.valuation == 0  # Lambda = 1


def test_eval_single_log():
    inst = _instance(5, [5], H=10, lambdas=(0, 1))
    res = eval_linear_form(inst)
    assert res.valuation == 1  # v_p(log(1+p)) = 1 for odd p


def test_eval_ultrametric():
    inst = _instance(5, [5, 10], H=10, lambdas=(5, 1, 1))
    res = eval_linear_form(inst)
    assert res.pinned
    assert res.valuation >= 1  # both log terms and 5 have valuation >= 1


def test_eval_additive_in_lambda():
    p = 7
    av = AlphaVector.build(p, [Fraction(7), Fraction(14)])
    l1, l2 = (3, -1, 2), (1, 4, -5)
    inst1 = ProblemInstance.build(p, av, H=10, lambdas=l1)
    inst2 = ProblemInstance.build(p, av, H=10, lambdas=l2)
    l_sum = tuple(a + b for a, b in zip(l1, l2))
    inst3 = ProblemInstance.build(p, av, H=10, lambdas=l_sum)
    k_abs = 24
    mod = p ** k_abs

    def residue(inst):
        total = inst.lambdas[0] % mod
        for lam, alpha in zip(inst.lambdas[1:], av.entries):
            total = (total + lam * padic_log_residue(alpha, p, k_abs)) % mod
        return total

    assert (residue(inst1) + residue(inst2)) % mod == residue(inst3)
    v3 = eval_linear_form(inst3)
    assert v3.pinned and _vp_int(residue(inst3), p) == v3.valuation


def test_sample_verify_no_violations_and_deterministic():
    inst = _instance(11, [11 ** 25], Q=1, H=10 ** 4)
    cert = certify(inst).best()
    rep1 = sample_verify(inst, cert, 60, seed=7)
    rep2 = sample_verify(inst, cert, 60, seed=7)
    assert rep1.ok and rep2.ok
    assert rep1.min_observed_log10_abs == rep2.min_observed_log10_abs
    assert rep1.samples_tested == 60
    rep3 = sample_verify(inst, cert, 60, seed=8)
    assert rep3.ok


def test_sample_verify_detects_inflated_bound():
    inst = _instance(11, [11 ** 25], Q=1, H=100)
    cert = certify(inst).best()
    # a bound claiming |Lambda_p|_p > 1 is impossible for integer lambda_0
    fake = replace(cert, bound_log10=Fraction(0))
    rep = sample_verify(inst, fake, 20, seed=3)
    assert rep.violations


def test_exhaustive_min_small_box():
    av = AlphaVector.build(5, [Fraction(5)])
    table = exhaustive_min(av, 3)
    assert [e.H for e in table] == [1, 2, 3]
    # oracle: direct enumeration of the 8 vectors at H = 1
    p = 5
    k_abs = 40
    mod = p ** k_abs
    log_res = padic_log_residue(Fraction(5), p, k_abs)
    best = -1
    for l0 in (-1, 0, 1):
        for l1 in (-1, 0, 1):
            if l0 == 0 and l1 == 0:
                continue
            r = (l0 + l1 * log_res) % mod
            assert r != 0
            best = max(best, _vp_int(r, p))
    assert table[0].max_valuation == best
    # nonincreasing minimum = nondecreasing max valuation
    assert all(a.max_valuation <= b.max_valuation for a, b in zip(table, table[1:]))


def test_exhaustive_min_budget():
    av = AlphaVector.build(5, [Fraction(5), Fraction(10)])
    with pytest.raises(BudgetExceededError):
        exhaustive_min(av, 50, budget=1000)


def test_pipeline_check_basic():
    inst = _instance(5, [5], H=10, lambdas=(3, -2))
    report = pipeline_check(inst, 2, 0)
    assert report.ok
    assert report.T != 0


def test_pipeline_check_random_regimes(rng):
    for regime in ("M>1", "M<1"):
        done = 0
        while done < 20:
            m = rng.randint(1, 2)
            k = rng.randint(1, 2)
            p = rng.choice([3, 5, 7, 11])
            av = random_alpha_vector(rng, m, prime=p, regime=regime)
            lambdas = [0] * (m + 1)
            while not any(lambdas):
                lambdas = [rng.randint(-4, 4) for _ in range(m + 1)]
            inst = ProblemInstance.build(p, av, H=4, lambdas=tuple(lambdas))
            try:
                report = pipeline_check(inst, k, rng.randint(0, m))
            except ValueError:
                continue  # T vanished at this mu; try another draw
            assert report.ok, report.items
            done += 1


def test_pipeline_check_requires_nonzero_T():
    # lambda = (0, 1, -1) with alpha_2 = -alpha_1 kills the mu = 0 row at k = 1
    inst = _instance(5, [5, -5], H=10, lambdas=(0, 1, 1))
    report = pipeline_check(inst, 1, 0)
    assert report.ok


def test_exhaustive_min_respects_certificate():
    # a small-threshold instance (large v_p(alpha)): the enumerated minimum
    # stays above the certified bound at the same height
    p, a = 11, 25
    av = AlphaVector.build(p, [Fraction(p ** a)], Q=1)
    h = 10
    inst = ProblemInstance.build(p, av, H=h)
    cert = certify(inst).best()
    assert cert is not None and cert.passed
    table = exhaustive_min(av, h)
    worst = table[-1].max_valuation
    from plogbound.intervals import IntervalScalar
    observed = -(worst * IntervalScalar.from_int(p, 128).log10())
    assert observed.lo_fraction() > cert.bound_log10


def test_reference_examples_all_pass():
    report = reproduce_examples()
    assert report.all_passed
    assert [e.name for e in report.examples] == [
        "m1-prime-power", "m2-plus-minus-p", "m1-small-ratio"]


def test_reference_example_1_values():
    ex = reference_example_1()
    assert ex.passed
    assert ex.claimed_exponent == Fraction(-21, 10)
    assert ex.threshold_log10.lo_fraction() > Fraction(166948, 100)
    assert ex.threshold_log10.hi_fraction() < Fraction(167548, 100)


def test_reference_example_2_values():
    ex = reference_example_2()
    assert ex.passed
    assert ex.claimed_exponent is None
    assert "log10_c1" in ex.computed


def test_reference_example_3_values():
    ex = reference_example_3()
    assert ex.passed
    assert ex.claimed_exponent == Fraction(-21, 10)
