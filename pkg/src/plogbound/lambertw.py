"""Rigorous enclosure of the lower Lambert branch W_{-1} on [-1/e, 0).

The initial bracket comes from the two-sided elementary estimate

    -log(t+1) - t - 2 + log(e-1)  <  W_{-1}(-e^(-t-1))  <=  -log(t+1) - t - 1

for t >= 0, and is then refined by bisection on x*e^x with outward-rounded
interval evaluations, so the returned interval is a certified enclosure.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .intervals import DEFAULT_PRECISION, DomainError, IntervalScalar, e_interval

DEFAULT_TARGET_WIDTH = Fraction(1, 10 ** 14)


def bracket_from_t(t: IntervalScalar) -> IntervalScalar:
    """Initial two-sided bracket for W_{-1}(-e^(-t-1)), t >= 0 (clamped)."""
    prec = t.prec
    zero = mpfr(0, prec)
    t_eff = IntervalScalar(max(t.lo, zero), max(t.hi, zero), prec)
    e_iv = e_interval(prec)
    log_e_minus_1 = (e_iv - 1).ln()
    base = -(t_eff + 1).ln() - t_eff
    lo = (base - 2 + log_e_minus_1).lo
    hi = min((base - 1).hi, mpfr(-1, prec))
    if lo > hi:
        lo = hi
    return IntervalScalar(lo, hi, prec)


def _refine_point(yv: mpfr, prec: int, target_width: Fraction,
                  max_iter: int) -> IntervalScalar:
    """Bracket of W_{-1}(yv) for a dyadic yv in (-1/e, 0); values at or below
    the branch point collapse toward -1, which stays sound because
    W_{-1} <= -1 throughout the domain.
    """
    y_point = IntervalScalar(yv, yv, prec)
    t = -(-y_point).ln() - 1
    bracket = bracket_from_t(t)
    a, b = bracket.lo, bracket.hi
    eval_prec = prec
    nearest = gmpy2.context(precision=prec + 32)
    for _ in range(max_iter):
        if Fraction(int(gmpy2.mpq(b).numerator), int(gmpy2.mpq(b).denominator)) \
                - Fraction(int(gmpy2.mpq(a).numerator), int(gmpy2.mpq(a).denominator)) \
                <= target_width:
            break
        mid = nearest.add(a, nearest.div(nearest.sub(b, a), 2))
        if not a < mid < b:
            break
        m_iv = IntervalScalar(mid, mid, eval_prec)
        f_mid = m_iv * m_iv.exp()
        if f_mid.lo > yv:
            a = mid  # x*e^x decreasing here, so the root lies above mid
        elif f_mid.hi < yv:
            b = mid
        elif eval_prec < 4 * prec:
            eval_prec *= 2
        else:
            break
    return IntervalScalar(a, b, prec)


def lambert_w_m1(y: IntervalScalar,
                 target_width: Fraction = DEFAULT_TARGET_WIDTH,
                 max_iter: int = 400) -> IntervalScalar:
    """Enclosure of W_{-1} over the part of `y` inside [-1/e, 0).

    Raises DomainError when `y` is certainly outside the branch domain.
    W_{-1} decreases from -1 (at -1/e) to -infinity (at 0-), so the result is
    [W(y.hi), W(y.lo)], with the upper end clamped at -1 whenever the lower
    argument may sit at or below the branch point.
    """
    prec = max(y.prec, DEFAULT_PRECISION)
    if y.hi >= 0:
        raise DomainError("W_{-1} requires y < 0", y.hi)
    e_iv = e_interval(prec)
    if (y * e_iv).hi < -1:
        raise DomainError("y lies certainly below -1/e", y.lo)
    lower = _refine_point(y.hi, prec, target_width, max_iter).lo
    upper = min(_refine_point(y.lo, prec, target_width, max_iter).hi,
                mpfr(-1, prec))
    if lower > upper:
        lower = upper
    return IntervalScalar(lower, upper, prec)
