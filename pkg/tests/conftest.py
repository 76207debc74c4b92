import random
from fractions import Fraction

import pytest

from plogbound.pade import AlphaVector

PRIMES = (3, 5, 7, 11, 13)


def random_alpha_vector(rng: random.Random, m: int, prime: int | None = None,
                        regime: str | None = None) -> AlphaVector:
    """A valid random alpha vector.

    With a prime: every entry has v_p >= 1 and a denominator coprime to p.
    regime 'M>1' forces max |alpha_i| > 1, 'M<1' forces all |alpha_i| < 1.
    """
    while True:
        entries = []
        for _ in range(m):
            if prime is None:
                num = rng.choice([-1, 1]) * rng.randint(1, 9)
                den = rng.randint(1, 9)
                entries.append(Fraction(num, den))
                continue
            a = rng.randint(1, 2)
            unit = rng.choice([u for u in range(1, 8) if u % prime != 0])
            num = rng.choice([-1, 1]) * unit * prime ** a
            if regime == "M<1":
                den = abs(num) + rng.choice([u for u in range(1, 60) if u % prime != 0])
            elif regime == "M>1":
                den = 1
            else:
                den = rng.choice([d for d in range(1, 9) if d % prime != 0])
            entries.append(Fraction(num, den))
        if len(set(entries)) != m or any(e == 0 for e in entries):
            continue
        big_m = max(abs(e) for e in entries)
        if big_m == 1:
            continue
        if regime == "M>1" and big_m <= 1:
            continue
        if regime == "M<1" and big_m >= 1:
            continue
        try:
            return AlphaVector.build(prime, entries)
        except ValueError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240817)
