"""Certified evaluation of the explicit lower-bound theorems.

For an instance (prime p, rational arguments alpha_i, height H, optional
epsilon) this module checks every hypothesis of the six supported bound
statements with outward rounding, selects the auxiliary index k, verifies
the contradiction product is certainly below 1, and emits certificates
(c, omega) with rounding directions that can only weaken the claimed bound:
c is rounded down, omega up, and a hypothesis can only fail spuriously,
never pass spuriously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError
from .intervals import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    IntervalScalar,
    ceil_hi,
    e_interval,
    iv_max,
    ln_interval,
)
from .lambertw import lambert_w_m1
from .pade import AlphaVector
from .padic import is_prime

# exponent constants of the estimates, kept exact
C_LOG = Fraction(103883, 100000)          # 1.03883
C_HALF_LOG = Fraction(103883, 200000)     # 0.519415
LOGLOG_FACTOR = Fraction(11633, 1000)     # 11.633

THEOREM_IDS = (
    "MGT1_MAIN",      # M > 1, bound c1 * H^(-omega1)
    "MGT1_LOGLOG",    # M > 1, explicit loglog-shaped exponent
    "MGT1_BEST_EPS",  # M > 1, bound H^(-m-1-eps)
    "MGT1_SIMPLE",    # M > 1, short constant exponent
    "MLT1_MAIN",      # M < 1, bound c2 * H^(-omega2)
    "MLT1_BEST_EPS",  # M < 1, bound H^(-m-1-eps)
)


@dataclass(frozen=True)
class ProblemInstance:
    """The linear-form data: lambda_0 + sum_j lambda_j log(1 + alpha_j).

    H may be an exact integer or an exact log10 value (heights like 10^1672
    enter the bounds only through log H).  epsilon is only consulted by the
    best-exponent theorems.
    """

    prime: int
    alphas: AlphaVector
    H: int | None = None
    H_log10: Fraction | None = None
    epsilon: Fraction | None = None
    lambdas: tuple[int, ...] | None = None
    precision_bits: int = DEFAULT_PRECISION

    @classmethod
    def build(cls, prime: int, alphas, Q: int | None = None, H=None,
              H_log10=None, epsilon=None, lambdas=None,
              precision_bits: int = DEFAULT_PRECISION) -> "ProblemInstance":
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        av = alphas if isinstance(alphas, AlphaVector) else AlphaVector.build(prime, alphas, Q)
        if av.prime != prime:
            raise ValueError("alpha vector built for a different prime")
        if H is not None and H_log10 is not None:
            raise ValueError("give H as an integer or as log10, not both")
        if H is not None:
            H = int(H)
            if H < 1:
                raise ValueError("H must be a positive integer")
        if H_log10 is not None:
            H_log10 = Fraction(H_log10)
        if epsilon is not None:
            epsilon = Fraction(epsilon)
            if not 0 < epsilon <= 3:
                raise ValueError("epsilon must lie in (0, 3]")
        if lambdas is not None:
            lambdas = tuple(int(l) for l in lambdas)
            if len(lambdas) != av.m + 1:
                raise ValueError(f"need {av.m + 1} lambdas")
            if all(l == 0 for l in lambdas):
                raise ValueError("lambdas must not all vanish")
            if H is not None and max(abs(l) for l in lambdas) > H:
                raise ValueError("max |lambda_i| exceeds H")
        return cls(prime, av, H, H_log10, epsilon, lambdas, precision_bits)

    @property
    def m(self) -> int:
        return self.alphas.m

    @property
    def has_H(self) -> bool:
        return self.H is not None or self.H_log10 is not None

    def H_interval(self, prec: int) -> IntervalScalar:
        if self.H is not None:
            return IntervalScalar.from_int(self.H, prec)
        if self.H_log10 is not None:
            return IntervalScalar.from_fraction(self.H_log10, prec).exp10()
        raise ValueError("instance has no height H")

    def lnH_interval(self, prec: int) -> IntervalScalar:
        if self.H is not None:
            return IntervalScalar.from_int(self.H, prec).ln()
        if self.H_log10 is not None:
            ln10 = ln_interval(10, prec)
            return IntervalScalar.from_fraction(self.H_log10, prec) * ln10
        raise ValueError("instance has no height H")

    def log10H_interval(self, prec: int) -> IntervalScalar:
        if self.H is not None:
            return IntervalScalar.from_int(self.H, prec).log10()
        return IntervalScalar.from_fraction(self.H_log10, prec)

    def H_compare_ln(self, threshold_ln: IntervalScalar):
        """Tri-state comparison H >= exp(threshold_ln); returns (passed, certain)."""
        lnH = self.lnH_interval(threshold_ln.prec)
        if lnH.lo >= threshold_ln.hi:
            return True, True
        if lnH.hi < threshold_ln.lo:
            return False, True
        return False, False


def f_value(m: int, M: Fraction, Q: int, alpha: Fraction,
            prec: int = DEFAULT_PRECISION) -> IntervalScalar:
    """Enclosure of f = 2^-1 * 3^-m * e^(-1.03883 m) * Q^-m * M^-m * alpha^-(m+1)."""
    exact = Fraction(1, 2) * Fraction(1, 3) ** m * Fraction(1, Q) ** m \
        * (1 / Fraction(M)) ** m * (1 / Fraction(alpha)) ** (m + 1)
    e_part = IntervalScalar.from_fraction(-C_LOG * m, prec).exp()
    return IntervalScalar.from_fraction(exact, prec) * e_part


@dataclass
class Mgt1Constants:
    """R1, c1, omega1 for the M > 1 regime (fields None when undefined)."""

    f: IntervalScalar
    ln_f: IntervalScalar | None = None
    R1: IntervalScalar | None = None
    c1_log10: IntervalScalar | None = None
    omega1: IntervalScalar | None = None
    ratio: IntervalScalar | None = None   # (m+1) ln(alpha) / ln(f)
    failures: tuple[str, ...] = ()


def constants_Mgt1(instance: ProblemInstance,
                   prec: int | None = None) -> Mgt1Constants:
    """Enclosures of R1, c1 and omega1(H); requires M > 1 and f > 1."""
    prec = prec or instance.precision_bits
    av = instance.alphas
    m, Q, M = av.m, av.Q, av.M
    alpha = av.alpha_p()
    f = f_value(m, M, Q, alpha, prec)
    out = Mgt1Constants(f=f)
    failures = []
    if M <= 1:
        failures.append("M <= 1")
    if not f.certainly_gt(1):
        failures.append("f not certainly > 1")
    if failures:
        out.failures = tuple(failures)
        return out
    ln_f = f.ln()
    ln_alpha = ln_interval(alpha, prec)
    ln_M = ln_interval(M, prec)
    ln2 = ln_interval(2, prec)
    r1 = (IntervalScalar.from_fraction(C_LOG * m, prec)
          + m * ln_interval(Q, prec)
          + ln_interval(m + 1, prec)
          + (m - 1) * ln2
          + (m + 1) * ln_M
          - ln_interval(M - 1, prec)
          + ln_interval(m + 2, prec)
          + ln_alpha
          - ln_f.ln())
    out.ln_f = ln_f
    out.R1 = r1
    ratio = (m + 1) * ln_alpha / ln_f
    out.ratio = ratio
    front = (M - 1) / (Fraction(6) ** m * (m + 1) * Q ** (2 * m)) / M ** (2 * m + 1)
    ln10 = ln_interval(10, prec)
    c1_ln = (ln_interval(front, prec)
             - IntervalScalar.from_fraction(2 * C_LOG * m, prec)
             + (ratio + 1) * (r1 + 1))
    out.c1_log10 = c1_ln / ln10
    if instance.has_H:
        lnH = instance.lnH_interval(prec)
        inner = lnH + r1
        if lnH.is_positive() and inner.is_positive():
            out.omega1 = (-ratio - 1) * (1 + inner.ln() / lnH) + 1
        else:
            failures.append("log H + R1 not certainly positive")
    out.failures = tuple(failures)
    return out


@dataclass
class Mlt1Constants:
    """R2, c2, omega2 for the M < 1 regime."""

    f: IntervalScalar
    ln_f: IntervalScalar | None = None
    R2: IntervalScalar | None = None
    c2_log10: IntervalScalar | None = None
    omega2: IntervalScalar | None = None
    ln_g: IntervalScalar | None = None    # ln(2 * 3^m * Q^m * e^(1.03883 m))
    failures: tuple[str, ...] = ()


def constants_Mlt1(instance: ProblemInstance,
                   prec: int | None = None) -> Mlt1Constants:
    """Enclosures of R2, c2 and omega2(H); requires M < 1 and log f >= 1."""
    prec = prec or instance.precision_bits
    av = instance.alphas
    m, Q, M = av.m, av.Q, av.M
    alpha = av.alpha_p()
    f = f_value(m, M, Q, alpha, prec)
    out = Mlt1Constants(f=f)
    failures = []
    if M >= 1:
        failures.append("M >= 1")
    ln_f = f.ln() if f.is_positive() else None
    if ln_f is None or not ln_f.certainly_ge(1):
        failures.append("log f not certainly >= 1")
        out.failures = tuple(failures)
        return out
    out.ln_f = ln_f
    ln2 = ln_interval(2, prec)
    r2 = ((Fraction(m, 2) + 1) * ln2
          + IntervalScalar.from_fraction(C_HALF_LOG * m, prec)
          + Fraction(m, 2) * ln_interval(Q, prec)
          + Fraction(1, 2) * (ln_interval(m, prec) + ln_interval(m + 1, prec)
                              + ln_interval(m + 2, prec) + ln_interval(alpha, prec)))
    out.R2 = r2
    ln_g = (ln_interval(2 * 3 ** m * Q ** m, prec)
            + IntervalScalar.from_fraction(C_LOG * m, prec))
    out.ln_g = ln_g
    ln10 = ln_interval(10, prec)
    front = Fraction(26 * m * (m + 1) * 6 ** m * Q ** (2 * m))
    c2_ln = -(ln_interval(front, prec)
              + IntervalScalar.from_fraction(2 * C_LOG * m, prec)
              + 5 * ln_g / ln_f)
    out.c2_log10 = c2_ln / ln10
    if instance.has_H:
        lnH = instance.lnH_interval(prec)
        if lnH.certainly_gt(1):
            out.omega2 = 1 + lnH.ln() / lnH + 11 * ln_g / ln_f
        else:
            failures.append("log H not certainly > 1")
    out.failures = tuple(failures)
    return out


# ---------------------------------------------------------------------------
# hypothesis checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Condition:
    name: str
    description: str
    passed: bool
    certain: bool
    evidence: tuple[tuple[str, str], ...] = ()


def _evidence(**kwargs) -> tuple[tuple[str, str], ...]:
    return tuple((k, str(v)) for k, v in kwargs.items())


def _tri_ge(lhs: IntervalScalar, rhs) -> tuple[bool, bool]:
    """(passed, certain) for lhs >= rhs with fail-safe rounding."""
    if lhs.certainly_ge(rhs):
        return True, True
    if lhs.certainly_lt(rhs):
        return False, True
    return False, False


def _tri_gt(lhs: IntervalScalar, rhs) -> tuple[bool, bool]:
    if lhs.certainly_gt(rhs):
        return True, True
    if lhs.certainly_le(rhs):
        return False, True
    return False, False


def _tri_le(lhs: IntervalScalar, rhs) -> tuple[bool, bool]:
    if lhs.certainly_le(rhs):
        return True, True
    if lhs.certainly_gt(rhs):
        return False, True
    return False, False


def _cond(name, desc, tri, **evidence) -> Condition:
    passed, certain = tri
    return Condition(name, desc, passed, certain, _evidence(**evidence))


def _cond_fail(name, desc) -> Condition:
    return Condition(name, desc, False, True)


def _cond_pass(name, desc) -> Condition:
    return Condition(name, desc, True, True)


def _h_gt_1(instance: ProblemInstance) -> Condition:
    if instance.H is not None:
        ok = instance.H > 1
    else:
        ok = instance.H_log10 > 0
    return Condition("H_gt_1", "H > 1", ok, True, _evidence(H=instance.H or f"10^{instance.H_log10}"))


def _h_ge_int(instance: ProblemInstance, n: int, prec: int) -> tuple[bool, bool]:
    if instance.H is not None:
        return instance.H >= n, True
    lhs = IntervalScalar.from_fraction(instance.H_log10, prec)
    return _tri_ge(lhs, IntervalScalar.from_int(n, prec).log10())


def best_eps_w_threshold_ln(m: int, eps: Fraction, prec: int) -> IntervalScalar:
    """ln of (1/2) * exp(-(3m/eps + 1) * W_-1(-2^(-eps/(3m+eps)) * eps/(3m+eps)))."""
    q = eps / (3 * m + eps)
    pow2 = IntervalScalar.from_int(2, prec).pow(IntervalScalar.from_fraction(-q, prec))
    warg = -(pow2 * IntervalScalar.from_fraction(q, prec))
    w = lambert_w_m1(warg)
    coeff = Fraction(3 * m, 1) / eps + 1
    return -ln_interval(2, prec) - IntervalScalar.from_fraction(coeff, prec) * w


def mlt1_eps_threshold_ln(m: int, Q: int, r2: IntervalScalar,
                          eps: Fraction, prec: int) -> IntervalScalar:
    """ln of (2^(m+4+2 R2) * 9^(R2+1) * (e^1.03883 Q)^((2 R2+3) m) * m(m+1))^(3/eps)."""
    ln2 = ln_interval(2, prec)
    ln9 = ln_interval(9, prec)
    ln_eq = IntervalScalar.from_fraction(C_LOG, prec) + ln_interval(Q, prec)
    inner = ((m + 4 + 2 * r2) * ln2
             + (r2 + 1) * ln9
             + (2 * r2 + 3) * m * ln_eq
             + ln_interval(m * (m + 1), prec))
    return Fraction(3, 1) / eps * inner


def mlt1_w_threshold_ln(m: int, eps: Fraction, prec: int) -> IntervalScalar:
    """ln of exp(-(6(m+1+eps/3)/eps) * W_-1(-eps/(6(m+1+eps/3))))."""
    denom = 6 * (m + 1 + eps / 3)
    w = lambert_w_m1(IntervalScalar.from_fraction(-eps / denom, prec))
    return -(IntervalScalar.from_fraction(denom / eps, prec) * w)


def cond_h5_quantity(instance: ProblemInstance, ln_f: IntervalScalar,
                     prec: int) -> IntervalScalar:
    """log^2(f) / (2^m e^(1.03883 m) Q^m H m(m+1)(m+2) alpha)."""
    av = instance.alphas
    m = av.m
    denom_exact = Fraction(2 ** m * av.Q ** m * m * (m + 1) * (m + 2)) * av.alpha_p()
    denom = (IntervalScalar.from_fraction(denom_exact, prec)
             * IntervalScalar.from_fraction(C_LOG * m, prec).exp()
             * instance.H_interval(prec))
    return ln_f.pow_int(2) / denom


def _common_structure(instance: ProblemInstance) -> list[Condition]:
    conds = [_cond_pass("m_ge_1", f"m = {instance.m} >= 1"),
             _cond_pass("alphas_distinct_nonzero",
                        "alpha_i pairwise distinct and nonzero (validated)"),
             _cond_pass("alpha_p_lt_1",
                        f"all v_p(alpha_i) >= 1 (min valuation {instance.alphas.min_valuation})")]
    if instance.lambdas is not None:
        conds.append(_cond_pass("lambda_not_all_zero", "some lambda_i is nonzero (validated)"))
    if not instance.has_H:
        conds.append(_cond_fail("H_present", "the height H must be given"))
    return conds


def _check_mgt1(theorem_id: str, instance: ProblemInstance, prec: int):
    """Conditions + constants for the M > 1 family."""
    conds = _common_structure(instance)
    av = instance.alphas
    m = av.m
    consts = constants_Mgt1(instance, prec)
    conds.append(Condition("M_gt_1", "M > 1", av.M > 1, True, _evidence(M=str(av.M))))
    if instance.has_H:
        conds.append(_h_gt_1(instance))
    conds.append(_cond("assumpless1", "f(m, M, Q, alpha) > 1",
                       _tri_gt(consts.f, 1), f=consts.f))
    if consts.R1 is None or not instance.has_H:
        return conds, consts
    lnH = instance.lnH_interval(prec)
    w1_lhs = lnH + consts.R1
    conds.append(_cond("condW1", "log H + R1 >= 1 (W-argument >= -1/e)",
                       _tri_ge(w1_lhs, 1), lhs=w1_lhs))

    if theorem_id == "MGT1_LOGLOG":
        ok3 = _h_ge_int(instance, 3, prec)
        conds.append(Condition("H_ge_3", "H >= 3", ok3[0], ok3[1]))
        conds.append(_cond("H_ge_exp_R1", "log H >= R1",
                           _tri_ge(lnH, consts.R1), lnH=lnH, R1=consts.R1))
    elif theorem_id == "MGT1_BEST_EPS":
        eps = instance.epsilon
        if eps is None:
            conds.append(_cond_fail("epsilon_present", "epsilon must be given"))
            return conds, consts
        rhs = Fraction(-m - 1) - eps / 3
        conds.append(_cond("m1epsilonpart",
                           "(m+1) log(alpha) / log(f) >= -m-1-eps/3",
                           _tri_ge(consts.ratio, rhs),
                           lhs=consts.ratio, rhs=rhs))
        ln10 = ln_interval(10, prec)
        t1_ln = IntervalScalar.from_fraction(Fraction(-3, 1) / eps, prec) \
            * (consts.c1_log10 * ln10)
        t2_ln = best_eps_w_threshold_ln(m, eps, prec)
        threshold_ln = iv_max(t1_ln, t2_ln)
        conds.append(_cond("condHm1Big",
                           "H >= max{c1^(-3/eps), (1/2) exp(-(3m/eps+1) W)}",
                           instance.H_compare_ln(threshold_ln),
                           threshold_ln=threshold_ln))
    elif theorem_id == "MGT1_SIMPLE":
        conds.append(_cond("condlogf", "log f >= 1",
                           _tri_ge(consts.ln_f, 1), ln_f=consts.ln_f))
        rhs = iv_max(iv_max(IntervalScalar.from_fraction(C_LOG * m, prec),
                            (m + 1) * ln_interval(av.M, prec)),
                     iv_max(ln_interval(m + 2, prec),
                            m * ln_interval(av.Q, prec)))
        conds.append(_cond("condH1",
                           "log H >= max{1.03883 m, (m+1) log M, log(m+2), m log Q}",
                           _tri_ge(lnH, rhs), lnH=lnH, rhs=rhs))
    return conds, consts


def _check_mlt1(theorem_id: str, instance: ProblemInstance, prec: int):
    conds = _common_structure(instance)
    av = instance.alphas
    m = av.m
    consts = constants_Mlt1(instance, prec)
    conds.append(Condition("M_lt_1", "M < 1", av.M < 1, True, _evidence(M=str(av.M))))
    if consts.f.is_positive():
        conds.append(_cond("condlogf", "log f >= 1",
                           _tri_ge(consts.f.ln(), 1), f=consts.f))
    else:
        conds.append(_cond_fail("condlogf", "log f >= 1 (f not certainly positive)"))
    if consts.ln_f is None or not instance.has_H:
        if instance.has_H:
            conds.append(_h_gt_1(instance))
        return conds, consts
    conds.append(_h_gt_1(instance))
    lnH = instance.lnH_interval(prec)
    q5 = cond_h5_quantity(instance, consts.ln_f, prec)
    four_over_e2 = IntervalScalar.from_int(4, prec) \
        * IntervalScalar.from_int(-2, prec).exp()
    conds.append(_cond("condH5",
                       "log^2 f / (2^m e^(1.03883m) Q^m H m(m+1)(m+2) alpha) <= 4/e^2",
                       _tri_le(q5, four_over_e2), lhs=q5, rhs=four_over_e2))
    e_iv = e_interval(prec)
    rhs3 = iv_max(iv_max((Fraction(m, 2) + 1) * ln_interval(2, prec),
                         IntervalScalar.from_fraction(C_HALF_LOG * m, prec)),
                  iv_max(Fraction(m, 2) * ln_interval(av.Q, prec),
                         iv_max(ln_interval(m + 2, prec), e_iv)))
    conds.append(_cond("condH3",
                       "log H > max{(m/2+1) log 2, 0.519415 m, (m/2) log Q, log(m+2), e}",
                       _tri_gt(lnH, rhs3), lnH=lnH, rhs=rhs3))

    if theorem_id == "MLT1_BEST_EPS":
        eps = instance.epsilon
        if eps is None:
            conds.append(_cond_fail("epsilon_present", "epsilon must be given"))
            return conds, consts
        lhs = ln_interval(Fraction(av.M) ** m * av.alpha_p() ** (m + 1), prec) / consts.ln_f
        rhs = Fraction(-m - 1) - eps / 3
        conds.append(_cond("flogmeps",
                           "log(M^m alpha^(m+1)) / log(f) >= -m-1-eps/3",
                           _tri_ge(lhs, rhs), lhs=lhs, rhs=rhs))
        t1_ln = mlt1_eps_threshold_ln(m, av.Q, consts.R2, eps, prec)
        conds.append(_cond("assumpHepsilon",
                           "H >= (2^(m+4+2R2) 9^(R2+1) (e^1.03883 Q)^((2R2+3)m) m(m+1))^(3/eps)",
                           instance.H_compare_ln(t1_ln), threshold_ln=t1_ln))
        t2_ln = mlt1_w_threshold_ln(m, eps, prec)
        conds.append(_cond("assumpHepsilonSecond",
                           "H >= exp(-(6(m+1+eps/3)/eps) W_-1(-eps/(6(m+1+eps/3))))",
                           instance.H_compare_ln(t2_ln), threshold_ln=t2_ln))
    return conds, consts


def check_conditions(theorem_id: str, instance: ProblemInstance,
                     prec: int | None = None) -> list[Condition]:
    """Evaluate every hypothesis of one theorem; failures are data, not errors."""
    prec = prec or instance.precision_bits
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    if theorem_id.startswith("MGT1"):
        conds, _ = _check_mgt1(theorem_id, instance, prec)
    else:
        conds, _ = _check_mlt1(theorem_id, instance, prec)
    return conds


# ---------------------------------------------------------------------------
# k selection and the contradiction product
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SelectedK:
    k: int
    omega_product: IntervalScalar   # the full product, certified < 1
    precision_bits: int


def omega_product(instance: ProblemInstance, k: int,
                  prec: int | None = None) -> IntervalScalar:
    """The product bounding 1 in the contradiction step, at index k:

        e^(1.03883(mk+m)) Q^(mk+m) H (m+1) 2^(k+m-1) 3^(mk)
        * [ (M^(mk+m+1) - M)/(M - 1)   if M > 1,   (mk+m)  if M < 1 ]
        * (mk+k+1) alpha^(mk+k+1)
    """
    prec = prec or instance.precision_bits
    av = instance.alphas
    m, Q, M = av.m, av.Q, av.M
    mk = m * k
    alpha = av.alpha_p()
    prod = IntervalScalar.from_fraction(C_LOG * (mk + m), prec).exp()
    prod = prod * IntervalScalar.from_int(Q, prec).pow_int(mk + m)
    prod = prod * instance.H_interval(prec)
    prod = prod * (m + 1)
    prod = prod * IntervalScalar.from_int(2, prec).pow_int(k + m - 1)
    prod = prod * IntervalScalar.from_int(3, prec).pow_int(mk)
    if M > 1:
        m_iv = IntervalScalar.from_fraction(M, prec)
        prod = prod * (m_iv.pow_int(mk + m + 1) - m_iv) / IntervalScalar.from_fraction(M - 1, prec)
    else:
        prod = prod * (mk + m)
    prod = prod * (mk + k + 1)
    prod = prod * IntervalScalar.from_fraction(alpha, prec).pow_int(mk + k + 1)
    return prod


def select_k(instance: ProblemInstance, regime: str,
             prec: int | None = None) -> SelectedK:
    """Ceiling of the W-expression for the given regime ('M>1' or 'M<1'),
    with the contradiction product verified certainly below 1 at the result.
    """
    prec = prec or instance.precision_bits
    av = instance.alphas
    m, Q, M = av.m, av.Q, av.M
    alpha = av.alpha_p()
    if regime == "M>1":
        consts = constants_Mgt1(instance, prec)
        if consts.R1 is None:
            raise ValueError(f"M > 1 hypotheses unavailable: {consts.failures}")
        lnH = instance.lnH_interval(prec)
        y = -(-(lnH + consts.R1)).exp()
        # self-test: the same quantity written as the explicit quotient
        denom_exact = (Fraction(2) ** (m - 1) * Q ** m * (m + 1) * (m + 2)
                       * Fraction(M) ** (m + 1) / (Fraction(M) - 1) * alpha)
        y_quotient = -(consts.ln_f / (IntervalScalar.from_fraction(denom_exact, prec)
                                       * IntervalScalar.from_fraction(C_LOG * m, prec).exp()
                                       * instance.H_interval(prec)))
        if not y.overlaps(y_quotient):
            raise InternalConsistencyError(
                f"W-argument forms disagree: {y} vs {y_quotient}")
        w = lambert_w_m1(y)
        k_real = w / (-consts.ln_f)
    elif regime == "M<1":
        consts = constants_Mlt1(instance, prec)
        if consts.ln_f is None:
            raise ValueError(f"M < 1 hypotheses unavailable: {consts.failures}")
        y5 = cond_h5_quantity(instance, consts.ln_f, prec)
        w = lambert_w_m1(-(y5.sqrt()) / 2)
        k_real = (-2 * w) / consts.ln_f
    else:
        raise ValueError("regime must be 'M>1' or 'M<1'")
    k = max(1, ceil_hi(k_real))
    check_prec = prec
    while True:
        product = omega_product(instance, k, check_prec)
        if product.certainly_lt(1):
            return SelectedK(k, product, check_prec)
        if check_prec >= MAX_PRECISION:
            raise InternalConsistencyError(
                f"contradiction product not certainly < 1 at k={k}: {product}")
        check_prec *= 2


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class BoundCertificate:
    """Outcome of one theorem on one instance.

    When `passed`, the certified statement is |Lambda_p|_p > c * H^(-omega)
    with log10(c) >= c_log10.lo and omega <= omega upper endpoint, hence
    log10 |Lambda_p|_p > bound_log10.
    """

    theorem_id: str
    passed: bool
    conditions: tuple[Condition, ...]
    precision_bits: int
    c_log10: IntervalScalar | None = None
    omega: IntervalScalar | None = None
    omega_exact: Fraction | None = None
    bound_log10: Fraction | None = None   # certified lower bound (exact endpoint)
    k_selected: int | None = None

    @property
    def c_log10_lower(self) -> Fraction | None:
        return None if self.c_log10 is None else self.c_log10.lo_fraction()

    @property
    def omega_upper(self) -> Fraction | None:
        if self.omega_exact is not None:
            return Fraction(self.omega_exact)
        return None if self.omega is None else self.omega.hi_fraction()

    def failed_conditions(self) -> list[Condition]:
        return [c for c in self.conditions if not c.passed]


@dataclass
class CertifyResult:
    instance: ProblemInstance
    certificates: list[BoundCertificate]
    best_id: str | None

    def best(self) -> BoundCertificate | None:
        if self.best_id is None:
            return None
        return next(c for c in self.certificates if c.theorem_id == self.best_id)

    def get(self, theorem_id: str) -> BoundCertificate:
        return next(c for c in self.certificates if c.theorem_id == theorem_id)


def _certificate_payload(theorem_id: str, instance: ProblemInstance, prec: int):
    """(c_log10, omega interval, omega_exact) for a theorem whose conditions passed."""
    av = instance.alphas
    m = av.m
    ln10 = ln_interval(10, prec)
    if theorem_id in ("MGT1_MAIN", "MGT1_LOGLOG"):
        consts = constants_Mgt1(instance, prec)
        if theorem_id == "MGT1_MAIN":
            return consts.c1_log10, consts.omega1, None
        lnH = instance.lnH_interval(prec)
        lnlnH = lnH.ln()
        exponent = (consts.ratio
                    + LOGLOG_FACTOR * (1 + consts.ratio) * lnlnH / lnH)
        return consts.c1_log10, -exponent, None
    if theorem_id == "MGT1_SIMPLE":
        front = (Fraction(av.M - 1) / (Fraction(6) ** m * (m + 1)
                                       * av.Q ** (2 * m)) / Fraction(av.M) ** (2 * m + 1))
        c_log10 = ((ln_interval(front, prec)
                    - IntervalScalar.from_fraction(2 * C_LOG * m, prec)) / ln10)
        omega = (1 + 14 * ln_interval(2, prec)
                 + 14 * m * (ln_interval(3 * av.Q, prec)
                             + IntervalScalar.from_fraction(C_LOG, prec)
                             + ln_interval(av.M, prec)))
        return c_log10, omega, None
    if theorem_id == "MLT1_MAIN":
        consts = constants_Mlt1(instance, prec)
        return consts.c2_log10, consts.omega2, None
    if theorem_id in ("MGT1_BEST_EPS", "MLT1_BEST_EPS"):
        omega_exact = Fraction(m + 1) + instance.epsilon
        zero = IntervalScalar.from_int(0, prec)
        return zero, IntervalScalar.from_fraction(omega_exact, prec), omega_exact
    raise ValueError(theorem_id)


def certify(instance: ProblemInstance) -> CertifyResult:
    """Try every applicable theorem; return all certificates, best one marked.

    Conditions are re-evaluated at doubled precision while any comparison is
    indeterminate (up to the 4096-bit cap); an indeterminate condition then
    counts as failed.
    """
    certs = []
    for theorem_id in THEOREM_IDS:
        prec = instance.precision_bits
        while True:
            conds = check_conditions(theorem_id, instance, prec)
            if all(c.certain for c in conds) or prec >= MAX_PRECISION:
                break
            prec *= 2
        passed = all(c.passed for c in conds)
        cert = BoundCertificate(theorem_id, passed, tuple(conds), prec)
        if passed:
            regime = "M>1" if theorem_id.startswith("MGT1") else "M<1"
            sel = select_k(instance, regime, prec)
            cert.k_selected = sel.k
            c_log10, omega, omega_exact = _certificate_payload(theorem_id, instance, prec)
            cert.c_log10 = c_log10
            cert.omega = omega
            cert.omega_exact = omega_exact
            bound_iv = c_log10 - omega * instance.log10H_interval(prec)
            cert.bound_log10 = bound_iv.lo_fraction()
        certs.append(cert)
    passing = [c for c in certs if c.passed]
    best_id = None
    if passing:
        best_id = max(passing, key=lambda c: c.bound_log10).theorem_id
    return CertifyResult(instance, certs, best_id)


# ---------------------------------------------------------------------------
# the comparison formula of the appendix (general algebraic-case bound)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class YuParams:
    """Parameters of the comparison bound for rational x_i/y_i.

    A_i >= max{|x_i|, |y_i|, e}; B >= max{|b_i|, 3}; B >= B_m >= |b_m|;
    delta in (0, 1/2]; m >= 2.
    """

    m: int
    prime: int
    A: tuple[Fraction, ...]
    b: tuple[int, ...]
    B: Fraction
    B_m: Fraction
    delta: Fraction
    fractions: tuple[Fraction, ...] | None = None  # optional x_i/y_i

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("the comparison bound needs m >= 2")
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if len(self.A) != self.m or len(self.b) != self.m:
            raise ValueError("need m values A_i and b_i")
        if not 0 < self.delta <= Fraction(1, 2):
            raise ValueError("delta must lie in (0, 1/2]")
        if any(bi == 0 for bi in self.b):
            raise ValueError("b_i must be nonzero")
        if self.B < 3 or any(self.B < abs(bi) for bi in self.b):
            raise ValueError("B must dominate max|b_i| and 3")
        if not self.B >= self.B_m >= abs(self.b[-1]):
            raise ValueError("need B >= B_m >= |b_m|")
        e_hi = e_interval(64).hi_fraction()
        if any(Fraction(a) < e_hi for a in self.A):
            raise ValueError("each A_i must be >= e")
        if self.fractions is not None:
            for a_i, frac in zip(self.A, self.fractions):
                if Fraction(a_i) < max(abs(frac.numerator), abs(frac.denominator)):
                    raise ValueError("A_i must dominate |x_i| and |y_i|")


@dataclass(frozen=True)
class YuBound:
    vp_upper: IntervalScalar        # upper bound on v_p(product - 1)
    log10_lambda_lower: IntervalScalar  # induced lower bound on log10 |Lambda_p|_p


def yu_bound(params: YuParams, prec: int = DEFAULT_PRECISION) -> YuBound:
    """Evaluate the comparison bound

        v_p < (16 e)^(2(m+1)) m^(3/2) (log 2m)^2 * p/(log p)^2
              * max{ (log A_1)...(log A_m)(log T), delta B / B_m }

    with T = (2 B_m / delta) e^((m+1)(6m+5)) p^(m+1) (log A_1)...(log A_{m-1}),
    and the induced bound |Lambda_p|_p > p^(-v_p).
    """
    m, p = params.m, params.prime
    log_a = [ln_interval(Fraction(a), prec) for a in params.A]
    t_val = (IntervalScalar.from_fraction(2 * Fraction(params.B_m) / params.delta, prec)
             * IntervalScalar.from_int((m + 1) * (6 * m + 5), prec).exp()
             * IntervalScalar.from_int(p ** (m + 1), prec))
    for la in log_a[:-1]:
        t_val = t_val * la
    log_t = t_val.ln()
    prod_log_a = log_a[0]
    for la in log_a[1:]:
        prod_log_a = prod_log_a * la
    first = prod_log_a * log_t
    second = IntervalScalar.from_fraction(
        params.delta * Fraction(params.B) / Fraction(params.B_m), prec)
    max_part = iv_max(first, second)
    front = (IntervalScalar.from_int(16 ** (2 * (m + 1)), prec)
             * IntervalScalar.from_int(2 * (m + 1), prec).exp()
             * IntervalScalar.from_int(m ** 3, prec).sqrt()
             * ln_interval(2 * m, prec).pow_int(2)
             * IntervalScalar.from_int(p, prec) / ln_interval(p, prec).pow_int(2))
    vp_upper = front * max_part
    log10_lower = -(vp_upper * IntervalScalar.from_int(p, prec).log10())
    return YuBound(vp_upper, log10_lower)
