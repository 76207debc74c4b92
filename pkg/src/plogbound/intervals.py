"""Interval scalars with dyadic endpoints and outward (directed) rounding.

Every arithmetic operation returns an enclosure of the exact image of its
arguments.  Endpoints are MPFR floats (arbitrary-precision dyadics) and each
endpoint is produced by a single correctly-rounded MPFR operation in the
appropriate rounding direction, so outward rounding is exact by construction.

The default working precision is 256 bits; callers escalate on demand when a
comparison is indeterminate.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096

_CTX_CACHE: dict[tuple[int, str], gmpy2.context] = {}


class DomainError(ValueError):
    """An interval operation was applied outside its domain.

    Carries the offending endpoint so error reports can show exactly which
    bound violated the precondition.
    """

    def __init__(self, message: str, endpoint=None):
        if endpoint is not None:
            message = f"{message} (offending endpoint: {endpoint})"
        super().__init__(message)
        self.endpoint = endpoint


def _ctx(prec: int, direction: str) -> gmpy2.context:
    """Context rounding toward -inf ('d') or +inf ('u') at `prec` bits."""
    key = (prec, direction)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        rnd = gmpy2.RoundDown if direction == "d" else gmpy2.RoundUp
        ctx = gmpy2.context(precision=prec, round=rnd)
        _CTX_CACHE[key] = ctx
    return ctx


def _check(x: mpfr) -> mpfr:
    if gmpy2.is_nan(x):
        raise DomainError("operation produced NaN", x)
    return x


class IntervalScalar:
    """A real quantity enclosed by outward-rounded dyadic endpoints."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: mpfr, hi: mpfr, prec: int):
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise DomainError("NaN endpoint", lo if gmpy2.is_nan(lo) else hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int = DEFAULT_PRECISION) -> "IntervalScalar":
        return cls(mpfr(n, prec, _ctx(prec, "d")), mpfr(n, prec, _ctx(prec, "u")), prec)

    @classmethod
    def from_fraction(cls, q, prec: int = DEFAULT_PRECISION) -> "IntervalScalar":
        r = mpq(q.numerator, q.denominator)
        return cls(mpfr(r, prec, _ctx(prec, "d")), mpfr(r, prec, _ctx(prec, "u")), prec)

    @classmethod
    def hull(cls, lo, hi, prec: int = DEFAULT_PRECISION) -> "IntervalScalar":
        """Interval spanning two exact values, rounded outward."""
        return cls(cls.wrap(lo, prec).lo, cls.wrap(hi, prec).hi, prec)

    @classmethod
    def wrap(cls, x, prec: int = DEFAULT_PRECISION) -> "IntervalScalar":
        if isinstance(x, IntervalScalar):
            return x
        if isinstance(x, int):
            return cls.from_int(x, prec)
        if isinstance(x, Fraction):
            return cls.from_fraction(x, prec)
        if isinstance(x, float):
            return cls.from_fraction(Fraction(x), prec)
        raise TypeError(f"cannot wrap {type(x)!r} as IntervalScalar")

    # -- inspection -----------------------------------------------------

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    def width(self) -> mpfr:
        return _ctx(self.prec, "u").sub(self.hi, self.lo)

    def lo_fraction(self) -> Fraction:
        q = mpq(self.lo)
        return Fraction(int(q.numerator), int(q.denominator))

    def hi_fraction(self) -> Fraction:
        q = mpq(self.hi)
        return Fraction(int(q.numerator), int(q.denominator))

    def midpoint(self) -> Fraction:
        return (self.lo_fraction() + self.hi_fraction()) / 2

    def contains(self, q) -> bool:
        """Whether the exact rational `q` lies inside the enclosure."""
        r = mpq(q.numerator, q.denominator) if not isinstance(q, int) else mpq(q)
        return mpq(self.lo) <= r <= mpq(self.hi)

    def encloses(self, other: "IntervalScalar") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "IntervalScalar") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    # certified comparisons: True only when provable from the endpoints
    def certainly_gt(self, x) -> bool:
        o = IntervalScalar.wrap(x, self.prec)
        return self.lo > o.hi

    def certainly_ge(self, x) -> bool:
        o = IntervalScalar.wrap(x, self.prec)
        return self.lo >= o.hi

    def certainly_lt(self, x) -> bool:
        o = IntervalScalar.wrap(x, self.prec)
        return self.hi < o.lo

    def certainly_le(self, x) -> bool:
        o = IntervalScalar.wrap(x, self.prec)
        return self.hi <= o.lo

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    # -- arithmetic -----------------------------------------------------

    def _binary_prec(self, other: "IntervalScalar") -> int:
        return max(self.prec, other.prec)

    def __neg__(self):
        # negation through the sized context: a bare -mpfr would round the
        # result into the 53-bit global context
        dn = _ctx(self.prec, "d")
        return IntervalScalar(dn.minus(self.hi), dn.minus(self.lo), self.prec)

    def __add__(self, other):
        o = IntervalScalar.wrap(other, self.prec)
        p = self._binary_prec(o)
        return IntervalScalar(
            _check(_ctx(p, "d").add(self.lo, o.lo)),
            _check(_ctx(p, "u").add(self.hi, o.hi)),
            p,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = IntervalScalar.wrap(other, self.prec)
        p = self._binary_prec(o)
        return IntervalScalar(
            _check(_ctx(p, "d").sub(self.lo, o.hi)),
            _check(_ctx(p, "u").sub(self.hi, o.lo)),
            p,
        )

    def __rsub__(self, other):
        return IntervalScalar.wrap(other, self.prec) - self

    def __mul__(self, other):
        o = IntervalScalar.wrap(other, self.prec)
        p = self._binary_prec(o)
        dn, up = _ctx(p, "d"), _ctx(p, "u")
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(_check(dn.mul(a, b)) for a, b in pairs)
        hi = max(_check(up.mul(a, b)) for a, b in pairs)
        return IntervalScalar(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = IntervalScalar.wrap(other, self.prec)
        if o.contains_zero():
            raise DomainError("division by interval containing zero",
                              o.lo if abs(o.lo) < abs(o.hi) else o.hi)
        p = self._binary_prec(o)
        dn, up = _ctx(p, "d"), _ctx(p, "u")
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(_check(dn.div(a, b)) for a, b in pairs)
        hi = max(_check(up.div(a, b)) for a, b in pairs)
        return IntervalScalar(lo, hi, p)

    def __rtruediv__(self, other):
        return IntervalScalar.wrap(other, self.prec) / self

    # -- elementary functions (monotone, endpoint-wise) -----------------

    def exp(self):
        return IntervalScalar(
            _check(_ctx(self.prec, "d").exp(self.lo)),
            _check(_ctx(self.prec, "u").exp(self.hi)),
            self.prec,
        )

    def exp10(self):
        return IntervalScalar(
            _check(_ctx(self.prec, "d").exp10(self.lo)),
            _check(_ctx(self.prec, "u").exp10(self.hi)),
            self.prec,
        )

    def ln(self):
        if self.lo <= 0:
            raise DomainError("ln requires a strictly positive interval", self.lo)
        return IntervalScalar(
            _check(_ctx(self.prec, "d").log(self.lo)),
            _check(_ctx(self.prec, "u").log(self.hi)),
            self.prec,
        )

    def log10(self):
        if self.lo <= 0:
            raise DomainError("log10 requires a strictly positive interval", self.lo)
        return IntervalScalar(
            _check(_ctx(self.prec, "d").log10(self.lo)),
            _check(_ctx(self.prec, "u").log10(self.hi)),
            self.prec,
        )

    def sqrt(self):
        if self.lo < 0:
            raise DomainError("sqrt requires a nonnegative interval", self.lo)
        return IntervalScalar(
            _check(_ctx(self.prec, "d").sqrt(self.lo)),
            _check(_ctx(self.prec, "u").sqrt(self.hi)),
            self.prec,
        )

    def pow_int(self, n: int):
        """self**n for an integer exponent; base may not straddle zero if n < 0."""
        if n == 0:
            return IntervalScalar.from_int(1, self.prec)
        if n < 0:
            return IntervalScalar.from_int(1, self.prec) / self.pow_int(-n)
        dn, up = _ctx(self.prec, "d"), _ctx(self.prec, "u")
        if self.lo >= 0:
            return IntervalScalar(_check(dn.pow(self.lo, n)), _check(up.pow(self.hi, n)), self.prec)
        if self.hi <= 0:
            if n % 2 == 0:
                return IntervalScalar(_check(dn.pow(self.hi, n)), _check(up.pow(self.lo, n)), self.prec)
            return IntervalScalar(_check(dn.pow(self.lo, n)), _check(up.pow(self.hi, n)), self.prec)
        # straddles zero
        if n % 2 == 1:
            return IntervalScalar(_check(dn.pow(self.lo, n)), _check(up.pow(self.hi, n)), self.prec)
        hi = max(_check(up.pow(self.lo, n)), _check(up.pow(self.hi, n)))
        return IntervalScalar(mpfr(0, self.prec), hi, self.prec)

    def pow(self, other):
        """self**other for a strictly positive base; extrema lie at box corners."""
        if self.lo <= 0:
            raise DomainError("pow requires a strictly positive base interval", self.lo)
        o = IntervalScalar.wrap(other, self.prec)
        p = self._binary_prec(o)
        dn, up = _ctx(p, "d"), _ctx(p, "u")
        corners = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(_check(dn.pow(a, b)) for a, b in corners)
        hi = max(_check(up.pow(a, b)) for a, b in corners)
        return IntervalScalar(lo, hi, p)

    def abs(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        neg_lo = _ctx(self.prec, "u").minus(self.lo)
        return IntervalScalar(mpfr(0, self.prec), max(neg_lo, self.hi), self.prec)


def iv_max(a: IntervalScalar, b: IntervalScalar) -> IntervalScalar:
    return IntervalScalar(max(a.lo, b.lo), max(a.hi, b.hi), max(a.prec, b.prec))


def iv_min(a: IntervalScalar, b: IntervalScalar) -> IntervalScalar:
    return IntervalScalar(min(a.lo, b.lo), min(a.hi, b.hi), max(a.prec, b.prec))


def e_interval(prec: int = DEFAULT_PRECISION) -> IntervalScalar:
    return IntervalScalar.from_int(1, prec).exp()


def ln_interval(q, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
    """Enclosure of ln(q) for an exact positive int or Fraction."""
    return IntervalScalar.wrap(q, prec).ln()


def ceil_hi(x: IntervalScalar) -> int:
    """Exact ceiling of the upper endpoint."""
    return math.ceil(x.hi_fraction())


_ELEMENTARY = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a: -a,
    "exp": lambda a: a.exp(),
    "ln": lambda a: a.ln(),
    "log10": lambda a: a.log10(),
    "sqrt": lambda a: a.sqrt(),
    "pow": lambda a, b: a.pow(b),
}


def elementary(op: str, *args: IntervalScalar) -> IntervalScalar:
    """Dispatch an elementary operation by name.

    Supported: add, sub, mul, div, neg, exp, ln, log10, sqrt, pow.
    """
    try:
        fn = _ELEMENTARY[op]
    except KeyError:
        raise ValueError(f"unknown elementary operation {op!r}") from None
    return fn(*args)
