"""Incremental table of d_n = lcm(1, ..., n), built from prime powers.

d_n changes only when n is a prime power, in which case it gains one factor
of the base prime.  The shared table tolerates concurrent reads; growth is
serialized behind a lock.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .intervals import DEFAULT_PRECISION, IntervalScalar

ROSSER_SLOPE = Fraction(103883, 100000)  # log lcm(1..n) < 1.03883 * n


def _prime_power_base(n: int) -> int | None:
    """The prime q with n = q^e, or None if n is not a prime power."""
    if n < 2:
        return None
    q = 2
    while q * q <= n:
        if n % q == 0:
            m = n
            while m % q == 0:
                m //= q
            return q if m == 1 else None
        q += 1
    return n  # n is prime


class LcmTable:
    """Append-only cache of d_1, d_2, ... (d_0 = d_1 = 1)."""

    def __init__(self):
        self._values = [1, 1]  # index n -> d_n
        self._lock = threading.Lock()

    def upto(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 1")
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = self._values
            if n < len(values):
                return values[n]
            grown = list(values)
            d = grown[-1]
            for i in range(len(grown), n + 1):
                q = _prime_power_base(i)
                if q is not None:
                    d *= q
                grown.append(d)
            self._values = grown  # single atomic swap; readers see old or new
        return self._values[n]


_SHARED = LcmTable()


def lcm_upto(n: int) -> int:
    """d_n = lcm(1, ..., n) from the shared monotone cache."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _SHARED.upto(n)


def rosser_holds(n: int, prec: int = DEFAULT_PRECISION) -> bool:
    """Certified check of log(d_n) < 1.03883 * n.

    The left side is an outward-rounded interval log of the exact integer;
    the comparison uses its upper endpoint, so a True answer is rigorous.
    """
    d = lcm_upto(n)
    log_d = IntervalScalar.from_int(d, prec).ln()
    return log_d.hi_fraction() < ROSSER_SLOPE * n
