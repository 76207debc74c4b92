from dataclasses import replace
from fractions import Fraction

import pytest

from plogbound.bounds import (
    C_LOG,
    ProblemInstance,
    THEOREM_IDS,
    YuParams,
    certify,
    check_conditions,
    constants_Mgt1,
    constants_Mlt1,
    f_value,
    select_k,
    yu_bound,
)
from plogbound.intervals import IntervalScalar, ln_interval
from plogbound.pade import AlphaVector

# independent high-precision evaluations (mpmath, 50 digits)
YU_VP_REFERENCE = Fraction("391970692103188.44728614579863130915694979745391751")
YU_FRONT_FACTOR = Fraction("36791093347.796641763875433822184086518496761391617")
LOG10_C1_149 = Fraction("-2655.2609250441835725350638632144992725698717202129")


def _pair_instance(p: int, **kwargs) -> ProblemInstance:
    av = AlphaVector.build(p, [Fraction(p), Fraction(-p)], Q=1)
    return ProblemInstance.build(p, av, **kwargs)


def _power_instance(p: int, a: int, **kwargs) -> ProblemInstance:
    av = AlphaVector.build(p, [Fraction(p ** a)], Q=1)
    return ProblemInstance.build(p, av, **kwargs)


def _small_ratio_instance(p: int, a: int, **kwargs) -> ProblemInstance:
    q = 1 + p ** a
    av = AlphaVector.build(p, [Fraction(p ** a, q)], Q=q)
    return ProblemInstance.build(p, av, **kwargs)


def test_f_value_closed_form():
    # f(2, p, 1, 1/p) = p / (18 e^2.07766)
    p = 149
    f = f_value(2, Fraction(p), 1, Fraction(1, p))
    direct = (IntervalScalar.from_fraction(Fraction(p, 18))
              * IntervalScalar.from_fraction(-2 * C_LOG).exp())
    assert f.overlaps(direct)
    assert f.certainly_gt(1)
    assert Fraction("1.0365") < f.lo_fraction() and f.hi_fraction() < Fraction("1.0366")


def test_f_value_below_one_for_smaller_prime():
    f = f_value(2, Fraction(139), 1, Fraction(1, 139))
    assert f.certainly_lt(1)


def test_f_value_power_form():
    # f(1, p^a, 1, p^-a) = p^a / (6 e^1.03883); >= e once p^a >= 6 e^2.03883 (~46.09)
    for p, a, expect_ge_e in ((47, 1, True), (43, 1, False), (11, 2, True)):
        f = f_value(1, Fraction(p ** a), 1, Fraction(1, p ** a))
        direct = (IntervalScalar.from_fraction(Fraction(p ** a, 6))
                  * IntervalScalar.from_fraction(-C_LOG).exp())
        assert f.overlaps(direct)
        e_iv = IntervalScalar.from_int(1).exp()
        assert f.certainly_ge(e_iv) == expect_ge_e


def test_constants_149():
    inst = _pair_instance(149)
    c = constants_Mgt1(inst)
    assert not c.failures
    assert c.R1.lo_fraction() >= 13 and c.R1.hi_fraction() <= 15
    coefficient = -c.ratio
    assert coefficient.lo_fraction() >= 417 and coefficient.hi_fraction() <= 419
    # certified c1 against the independent 50-digit evaluation (compared up
    # to the reference's own truncation error)
    tol = Fraction(1, 10 ** 40)
    assert LOG10_C1_149 - tol < c.c1_log10.lo_fraction()
    assert c.c1_log10.hi_fraction() < LOG10_C1_149 + tol
    assert c.c1_log10.width() < Fraction(1, 10 ** 20)


def test_omega1_monotone_decreasing():
    inst = _power_instance(11, 25)
    base = constants_Mgt1(inst)
    assert base.R1.certainly_lt(0)
    omegas = []
    for h in (100, 10 ** 4, 10 ** 8):
        c = constants_Mgt1(replace(inst, H=h))
        omegas.append(c.omega1)
    assert omegas[0].certainly_gt(omegas[1])
    assert omegas[1].certainly_gt(omegas[2])


def test_omega1_limit_is_leading_coefficient():
    # omega1 -> -(m+1) log(alpha)/log(f) as H grows without bound
    inst = _power_instance(11, 25)
    limit = -constants_Mgt1(inst).ratio
    far = constants_Mgt1(replace(inst, H_log10=Fraction(10 ** 7))).omega1
    assert far.certainly_gt(limit)
    gap = far - limit
    assert gap.certainly_lt(Fraction(1, 10 ** 4))


def test_loglog_certificate_shape():
    inst = _power_instance(11, 25, H=10 ** 8)
    result = certify(inst)
    cert = result.get("MGT1_LOGLOG")
    assert cert.passed
    consts = constants_Mgt1(inst)
    prec = 256
    lnH = inst.lnH_interval(prec)
    direct = -(consts.ratio + Fraction(11633, 1000) * (1 + consts.ratio)
               * lnH.ln() / lnH)
    assert cert.omega.overlaps(direct)
    # the explicit loglog form is weaker than the generic omega1
    assert cert.omega.certainly_gt(consts.omega1)
    assert result.get("MGT1_MAIN").bound_log10 > cert.bound_log10


def test_best_eps_strict_threshold_behaviour():
    # with the formula threshold c1^(-3/eps), the height condition flips at
    # log10 H around 30 * 53.95 ~ 1618.5 for this instance
    inst = _power_instance(11, 25, epsilon=Fraction(1, 10))
    conds_hi = check_conditions("MGT1_BEST_EPS", replace(inst, H_log10=Fraction(1620)))
    conds_lo = check_conditions("MGT1_BEST_EPS", replace(inst, H_log10=Fraction(1617)))
    hi = {c.name: c for c in conds_hi}
    lo = {c.name: c for c in conds_lo}
    assert hi["condHm1Big"].passed
    assert not lo["condHm1Big"].passed and lo["condHm1Big"].certain
    # the epsilon-part hypothesis itself does not hold at this instance
    assert not hi["m1epsilonpart"].passed and hi["m1epsilonpart"].certain


def test_rounding_soundness_4x():
    inst = _pair_instance(149, H=10 ** 6)
    low = constants_Mgt1(inst, 256)
    high = constants_Mgt1(inst, 1024)
    assert low.c1_log10.encloses(high.c1_log10)
    assert low.omega1.encloses(high.omega1)
    inst2 = _small_ratio_instance(11, 25, H=10 ** 14)
    low2 = constants_Mlt1(inst2, 256)
    high2 = constants_Mlt1(inst2, 1024)
    assert low2.c2_log10.encloses(high2.c2_log10)
    assert low2.omega2.encloses(high2.omega2)


def test_r2_matches_specialized_form():
    # m = 1, Q = 1 + p^a, alpha_1 = p^a/(1+p^a):
    # R2 = 2 log 2 + (1/2) log 3 + 0.519415 + (1/2)(log(1+p^a) - log(p^a))
    p, a = 11, 2
    inst = _small_ratio_instance(p, a)
    r2 = constants_Mlt1(inst).R2
    prec = 256
    direct = (2 * ln_interval(2, prec)
              + Fraction(1, 2) * ln_interval(3, prec)
              + IntervalScalar.from_fraction(Fraction(103883, 200000), prec)
              + Fraction(1, 2) * (ln_interval(1 + p ** a, prec)
                                  - ln_interval(p ** a, prec)))
    assert r2.overlaps(direct)
    assert r2.certainly_ge(0)


def test_mlt1_constants_against_independent_oracle():
    # one sweep through c2/omega2/product formulas on a second numeric stack
    import mpmath
    mpmath.mp.dps = 60
    ln = mpmath.log
    c_log = mpmath.mpf("1.03883")
    p, a = 11, 4
    q_val = 1 + p ** a
    inst = _small_ratio_instance(p, a, H=10 ** 45)
    consts = constants_Mlt1(inst)
    m = 1
    big_m = mpmath.mpf(p ** a) / q_val
    alpha = mpmath.mpf(p) ** (-a)
    q = mpmath.mpf(q_val)
    f = mpmath.mpf(1) / 2 / 3 ** m * mpmath.exp(-c_log * m) / q ** m / big_m ** m / alpha ** (m + 1)
    r2 = ((m / mpmath.mpf(2) + 1) * ln(2) + mpmath.mpf("0.519415") * m
          + m / mpmath.mpf(2) * ln(q) + (ln(m) + ln(m + 1) + ln(m + 2) + ln(alpha)) / 2)
    g = 2 * 3 ** m * q ** m * mpmath.exp(c_log * m)
    c2 = 1 / (26 * m * (m + 1) * (6 * q ** 2 * mpmath.exp(2 * c_log)) ** m
              * mpmath.exp(5 * ln(g) / ln(f)))
    h = mpmath.mpf(10) ** 45
    omega2 = 1 + ln(ln(h)) / ln(h) + 11 * ln(g) / ln(f)
    assert abs(float(consts.R2.midpoint()) - float(r2)) < 1e-25
    assert abs(float(consts.c2_log10.midpoint()) - float(mpmath.log10(c2))) < 1e-25
    assert abs(float(consts.omega2.midpoint()) - float(omega2)) < 1e-25
    from plogbound.bounds import omega_product
    prod = omega_product(inst, 2)
    mk = 2 * m
    ref = (mpmath.exp(c_log * (mk + m)) * q ** (mk + m) * h * (m + 1)
           * 2 ** (2 + m - 1) * 3 ** mk * (mk + m) * (mk + 3) * alpha ** (mk + 3))
    assert abs(float(prod.midpoint()) / float(ref) - 1) < 1e-30


def test_omega_product_mgt1_against_independent_oracle():
    import mpmath
    mpmath.mp.dps = 60
    c_log = mpmath.mpf("1.03883")
    inst = _pair_instance(149, H=10 ** 6)
    from plogbound.bounds import omega_product
    prod = omega_product(inst, 3)
    m, q, big_m = 2, mpmath.mpf(1), mpmath.mpf(149)
    alpha = 1 / mpmath.mpf(149)
    h = mpmath.mpf(10) ** 6
    mk = 3 * m
    ref = (mpmath.exp(c_log * (mk + m)) * q ** (mk + m) * h * (m + 1)
           * 2 ** (3 + m - 1) * 3 ** mk
           * (big_m ** (mk + m + 1) - big_m) / (big_m - 1)
           * (mk + 4) * alpha ** (mk + 4))
    assert abs(float(prod.midpoint()) / float(ref) - 1) < 1e-30


def test_omega2_above_one():
    inst = _small_ratio_instance(11, 25, H=10 ** 14)
    c = constants_Mlt1(inst)
    assert not c.failures
    assert c.omega2.certainly_gt(1)


def test_c2_decreases_in_q():
    p, a = 11, 25
    q = 1 + p ** a
    av1 = AlphaVector.build(p, [Fraction(p ** a, q)], Q=q)
    av2 = AlphaVector.build(p, [Fraction(p ** a, q)], Q=2 * q)
    c_small = constants_Mlt1(ProblemInstance.build(p, av1))
    c_big = constants_Mlt1(ProblemInstance.build(p, av2))
    assert c_big.c2_log10.certainly_lt(c_small.c2_log10)


def test_check_conditions_f_threshold():
    ok = check_conditions("MGT1_MAIN", _pair_instance(149, H=10 ** 6))
    by_name = {c.name: c for c in ok}
    assert by_name["assumpless1"].passed
    bad = check_conditions("MGT1_MAIN", _pair_instance(139, H=10 ** 6))
    by_name = {c.name: c for c in bad}
    assert not by_name["assumpless1"].passed and by_name["assumpless1"].certain


def test_best_eps_threshold_behaviour():
    # with eps = 3 and a moderate argument, the best-exponent route applies
    inst = _power_instance(11, 4, epsilon=Fraction(3))
    consts = constants_Mgt1(inst)
    ratio = consts.ratio
    assert ratio.certainly_ge(Fraction(-5))  # -m-1-eps/3 = -3 for m=1, eps=3
    threshold_log10 = (-(Fraction(3) / 3) * consts.c1_log10)
    h_pass = 10 ** 14
    conds = check_conditions("MGT1_BEST_EPS", replace(inst, H=h_pass))
    by_name = {c.name: c for c in conds}
    assert by_name["m1epsilonpart"].passed
    assert by_name["condHm1Big"].passed
    conds_low = check_conditions("MGT1_BEST_EPS", replace(inst, H=10 ** 3))
    by_name_low = {c.name: c for c in conds_low}
    assert not by_name_low["condHm1Big"].passed
    assert threshold_log10.hi_fraction() < 14  # sanity: threshold below 10^14


def test_certify_best_eps_and_consistency():
    # when the best-exponent certificate applies, the generic certificate
    # implies at least the same bound: c1 H^(-omega1) >= H^(-m-1-eps)
    inst = _power_instance(11, 4, epsilon=Fraction(3), H=10 ** 14)
    result = certify(inst)
    eps_cert = result.get("MGT1_BEST_EPS")
    main_cert = result.get("MGT1_MAIN")
    assert eps_cert.passed and main_cert.passed
    assert eps_cert.omega_exact == Fraction(5)
    assert main_cert.bound_log10 > eps_cert.bound_log10


def test_certify_mlt1_best_eps():
    inst = _small_ratio_instance(11, 4, epsilon=Fraction(3), H=10 ** 45)
    result = certify(inst)
    cert = result.get("MLT1_BEST_EPS")
    assert cert.passed
    assert cert.omega_exact == Fraction(5)
    main = result.get("MLT1_MAIN")
    assert main.passed


def test_select_k_at_least_one_and_product_below_one():
    inst = _power_instance(11, 25, H=10 ** 4)
    sel = select_k(inst, "M>1")
    assert sel.k >= 1
    assert sel.omega_product.certainly_lt(1)
    inst2 = _small_ratio_instance(11, 25, H=10 ** 14)
    sel2 = select_k(inst2, "M<1")
    assert sel2.k >= 1
    assert sel2.omega_product.certainly_lt(1)


def test_simple_certificate_exponent_form():
    # the constant-exponent omega equals 1 + 14 log 2 + 14 m log(3 e^1.03883 Q M)
    inst = _power_instance(11, 4, H=10 ** 9)
    result = certify(inst)
    cert = result.get("MGT1_SIMPLE")
    assert cert.passed
    prec = 256
    m, q_val, m_val = 1, 1, Fraction(11 ** 4)
    direct = (1 + 14 * ln_interval(2, prec)
              + 14 * m * (ln_interval(3 * q_val, prec)
                          + IntervalScalar.from_fraction(C_LOG, prec)
                          + ln_interval(m_val, prec)))
    assert cert.omega.overlaps(direct)


def test_certify_huge_h_log_form():
    inst = _pair_instance(149, H_log10=Fraction(1672))
    result = certify(inst)
    cert = result.get("MGT1_MAIN")
    assert cert.passed
    assert cert.k_selected > 10 ** 5  # k scales like 14 log H here
    assert cert.bound_log10 < Fraction(-400 * 1672)


def test_instance_validation():
    av = AlphaVector.build(5, [Fraction(5)])
    with pytest.raises(ValueError):
        ProblemInstance.build(4, [Fraction(4)])  # composite p
    with pytest.raises(ValueError):
        ProblemInstance.build(5, av, H=10, lambdas=(0, 0))
    with pytest.raises(ValueError):
        ProblemInstance.build(5, av, H=10, lambdas=(11, 1))  # exceeds H
    with pytest.raises(ValueError):
        ProblemInstance.build(5, av, epsilon=Fraction(4))
    with pytest.raises(ValueError):
        ProblemInstance.build(5, av, H=10, H_log10=Fraction(1))


def test_theorem_id_list_stable():
    assert THEOREM_IDS == ("MGT1_MAIN", "MGT1_LOGLOG", "MGT1_BEST_EPS",
                           "MGT1_SIMPLE", "MLT1_MAIN", "MLT1_BEST_EPS")


def test_yu_bound_reference_value():
    params = YuParams(2, 149, (Fraction(150), Fraction(150)), (10, 10),
                      Fraction(10), Fraction(10), Fraction(1, 2))
    bound = yu_bound(params)
    tol = Fraction(1, 10 ** 30)  # the reference is a 50-digit truncation
    assert YU_VP_REFERENCE - tol < bound.vp_upper.lo_fraction()
    assert bound.vp_upper.hi_fraction() < YU_VP_REFERENCE + tol
    assert float(bound.vp_upper.width()) / float(YU_VP_REFERENCE) < 1e-12


def test_yu_front_factor():
    prec = 256
    front = (IntervalScalar.from_int(16 ** 6, prec)
             * IntervalScalar.from_int(6, prec).exp()
             * IntervalScalar.from_int(8, prec).sqrt()
             * ln_interval(4, prec).pow_int(2))
    tol = Fraction(1, 10 ** 30)
    assert YU_FRONT_FACTOR - tol < front.lo_fraction()
    assert front.hi_fraction() < YU_FRONT_FACTOR + tol


def test_yu_monotone_in_B():
    base = YuParams(2, 149, (Fraction(150), Fraction(150)), (10, 10),
                    Fraction(10), Fraction(10), Fraction(1, 2))
    bigger = replace(base, B=Fraction(10 ** 6))
    b1 = yu_bound(base)
    b2 = yu_bound(bigger)
    assert b2.vp_upper.hi_fraction() >= b1.vp_upper.lo_fraction()


def test_yu_params_validation():
    good = dict(m=2, prime=149, A=(Fraction(150), Fraction(150)), b=(10, 10),
                B=Fraction(10), B_m=Fraction(10), delta=Fraction(1, 2))
    YuParams(**good)
    with pytest.raises(ValueError):
        YuParams(**{**good, "m": 1})
    with pytest.raises(ValueError):
        YuParams(**{**good, "delta": Fraction(2, 3)})
    with pytest.raises(ValueError):
        YuParams(**{**good, "A": (Fraction(2), Fraction(150))})  # below e
    with pytest.raises(ValueError):
        YuParams(**{**good, "B": Fraction(2)})
