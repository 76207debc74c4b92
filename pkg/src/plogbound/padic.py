"""Exact p-adic arithmetic: valuations, finite-precision p-adic values,
and the p-adic logarithm with a certified truncation tail.

A `PadicValue` stores (valuation, unit residue mod p^N), so |x|_p is exact
regardless of the size of the underlying number; bound checks compare
valuations directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import gmpy2

INF = math.inf


def is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")


def _vp_int(n: int, p: int) -> int:
    """Exact valuation of a nonzero integer."""
    _, count = gmpy2.remove(gmpy2.mpz(n), p)
    return int(count)


def padic_valuation(x, p: int):
    """v_p(x) for a rational x, with v_p(0) = +inf."""
    _require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def _ilog(n: int, p: int) -> int:
    """floor(log_p(n)) for n >= 1."""
    e = 0
    q = p
    while q <= n:
        e += 1
        q *= p
    return e


class PadicValue:
    """A p-adic number known modulo p^(valuation + precision).

    Represents the coset p^valuation * (unit + p^precision * Z_p) with the
    unit coprime to p.  The exact zero is marked by valuation = +inf.
    """

    __slots__ = ("prime", "valuation", "unit", "precision")

    def __init__(self, prime: int, valuation, unit: int, precision):
        _require_prime(prime)
        if valuation == INF:
            if unit != 0:
                raise ValueError("zero marker requires unit 0")
        else:
            if precision < 1:
                raise ValueError("precision must be >= 1")
            unit %= prime ** precision
            if unit % prime == 0:
                raise ValueError("unit residue divisible by the prime")
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    @classmethod
    def zero(cls, prime: int) -> "PadicValue":
        return cls(prime, INF, 0, INF)

    @classmethod
    def from_rational(cls, x, prime: int, precision: int) -> "PadicValue":
        x = Fraction(x)
        if x == 0:
            return cls.zero(prime)
        v = padic_valuation(x, prime)
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= prime ** v
        elif v < 0:
            den //= prime ** (-v)
        mod = prime ** precision
        unit = num * pow(den, -1, mod) % mod
        return cls(prime, int(v), unit, precision)

    # -- inspection -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def abs_precision(self):
        """The value is known modulo p^abs_precision."""
        if self.is_zero:
            return INF
        return self.valuation + self.precision

    def abs_p(self) -> Fraction:
        """|x|_p as an exact rational (0 for the exact zero)."""
        if self.is_zero:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(1, self.prime ** self.valuation)
        return Fraction(self.prime ** (-self.valuation))

    def residue(self, k: int) -> int:
        """The value modulo p^k (requires a p-integral value known to p^k)."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("residue undefined for negative valuation")
        if self.abs_precision < k:
            raise ValueError(f"value only known modulo p^{self.abs_precision}, need p^{k}")
        return self.unit * self.prime ** self.valuation % self.prime ** k

    def __repr__(self):
        if self.is_zero:
            return f"0 (exact, {self.prime}-adic)"
        return (f"{self.prime}^{self.valuation}*({self.unit} "
                f"+ O({self.prime}^{self.precision}))")

    # -- arithmetic -----------------------------------------------------

    def _same_prime(self, other: "PadicValue") -> None:
        if self.prime != other.prime:
            raise ValueError("mixed primes")

    def __neg__(self):
        if self.is_zero:
            return self
        mod = self.prime ** self.precision
        return PadicValue(self.prime, self.valuation, (-self.unit) % mod, self.precision)

    def __mul__(self, other: "PadicValue"):
        self._same_prime(other)
        if self.is_zero or other.is_zero:
            return PadicValue.zero(self.prime)
        n = min(self.precision, other.precision)
        mod = self.prime ** n
        return PadicValue(self.prime, self.valuation + other.valuation,
                          self.unit * other.unit % mod, n)

    def mul_rational(self, q) -> "PadicValue":
        """Multiply by an exact nonzero rational (precision preserved)."""
        q = Fraction(q)
        if q == 0:
            return PadicValue.zero(self.prime)
        if self.is_zero:
            return self
        v = int(padic_valuation(q, self.prime))
        num, den = q.numerator, q.denominator
        if v > 0:
            num //= self.prime ** v
        elif v < 0:
            den //= self.prime ** (-v)
        mod = self.prime ** self.precision
        unit = self.unit * num * pow(den, -1, mod) % mod
        return PadicValue(self.prime, self.valuation + v, unit, self.precision)

    def add(self, other: "PadicValue") -> "PadicValue":
        """Sum of the two cosets.

        Raises PrecisionLossError when the sum cancels below the shared
        absolute precision (the caller should recompute with more digits).
        """
        self._same_prime(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        k = min(self.abs_precision, other.abs_precision)
        w = min(self.valuation, other.valuation)
        mod = self.prime ** (k - w)
        r = (self.unit * self.prime ** (self.valuation - w)
             + other.unit * self.prime ** (other.valuation - w)) % mod
        if r == 0:
            raise PrecisionLossError(
                f"sum vanishes modulo {self.prime}^{k}; escalate precision")
        dv = _vp_int(r, self.prime)
        v = w + dv
        unit = r // self.prime ** dv
        return PadicValue(self.prime, v, unit, k - v)

    def sub(self, other: "PadicValue") -> "PadicValue":
        return self.add(-other)

    def same_coset(self, other: "PadicValue") -> bool:
        """Whether the two values agree modulo the shared absolute precision."""
        self._same_prime(other)
        k = min(self.abs_precision, other.abs_precision)
        if k == INF:
            return self.is_zero and other.is_zero
        k = int(k)
        vals = [x for x in (self, other) if not x.is_zero]
        w = min(x.valuation for x in vals)
        w = min(w, k)
        mod = self.prime ** (k - w)

        def shifted(x: "PadicValue") -> int:
            if x.is_zero:
                return 0
            return x.unit * x.prime ** (x.valuation - w) % mod

        return shifted(self) == shifted(other)


class PrecisionLossError(ArithmeticError):
    """A p-adic combination cancelled below the certified precision."""


def log_truncation_index(v_t: int, p: int, k_abs: int) -> int:
    """Smallest n0 such that every series term with index >= n0 has
    valuation > k_abs, using the explicit bound (n+1)v_t - floor(log_p(n+1)).

    The bound is nondecreasing in n for v_t >= 1, so the scan is exact.
    """
    n = 0
    while (n + 1) * v_t - _ilog(n + 1, p) <= k_abs:
        n += 1
    return n


@lru_cache(maxsize=None)
def padic_log_residue(t: Fraction, p: int, k_abs: int) -> int:
    """Residue of log(1+t) modulo p^k_abs, certified by the truncation bound.

    Requires v_p(t) >= 1.  The partial sum is evaluated in exact rational
    arithmetic and reduced modulo p^k_abs; every dropped term has valuation
    strictly greater than k_abs.
    """
    v_t = padic_valuation(t, p)
    if v_t < 1:
        raise ValueError("|t|_p >= 1: the logarithm series diverges")
    if t == 0:
        return 0
    n0 = log_truncation_index(int(v_t), p, k_abs)
    # tail certificate: first dropped term already exceeds the target
    assert (n0 + 1) * v_t - _ilog(n0 + 1, p) > k_abs
    s = Fraction(0)
    power = Fraction(1)
    for n in range(n0):
        power *= t
        term = power / (n + 1)
        s += term if n % 2 == 0 else -term
    if s == 0:
        return 0
    num, den = s.numerator, s.denominator
    mod = p ** k_abs
    return num % mod * pow(den, -1, mod) % mod


def padic_log(t, p: int, target_precision: int) -> PadicValue:
    """log(1+t) as a PadicValue with certified precision >= target_precision.

    Requires |t|_p < 1.  The truncation index is chosen from the explicit
    term-valuation bound; the returned coset is exact modulo
    p^(valuation + precision).
    """
    _require_prime(p)
    if target_precision < 1:
        raise ValueError("target_precision must be >= 1")
    t = Fraction(t)
    if t == 0:
        return PadicValue.zero(p)
    v_t = padic_valuation(t, p)
    if v_t < 1:
        raise ValueError("|t|_p >= 1: the logarithm series diverges")
    if p == 2 and t == -2:
        return PadicValue.zero(p)  # log(-1) = 0 in Q_2
    v_t = int(v_t)
    k = v_t + target_precision
    while True:
        r = padic_log_residue(t, p, k)
        if r != 0:
            v = _vp_int(r, p)
            if k - v >= target_precision:
                unit = r // p ** v
                return PadicValue(p, v, unit, k - v)
            k = v + target_precision
        else:
            # value is 0 mod p^k but log(1+t) != 0 here; dig deeper
            k *= 2
