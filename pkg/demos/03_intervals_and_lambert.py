#!/usr/bin/env python3
"""Directed-rounding interval scalars, the lcm growth bound, and the
rigorous enclosure of the lower Lambert branch."""

from fractions import Fraction

from plogbound.intervals import IntervalScalar, e_interval
from plogbound.lambertw import bracket_from_t, lambert_w_m1
from plogbound.lcm import lcm_upto, rosser_holds

print("== outward rounding ==")
third = IntervalScalar.from_fraction(Fraction(1, 3), 64)
print(f"1/3 at 64 bits: {third}")
print(f"width: {float(third.width()):.2e}")
tight = IntervalScalar.from_fraction(Fraction(1, 3), 512)
print(f"width at 512 bits: {float(tight.width()):.2e}")

x = IntervalScalar.from_fraction(Fraction("2.07766"))
print(f"\nexp(2.07766) = {x.exp()}")
print("every endpoint is produced by one correctly-rounded MPFR operation,")
print("so the enclosure is certified, not heuristic")

print("\n== lcm table ==")
print(f"lcm(1..10) = {lcm_upto(10)}")
print(f"lcm(1..100) has {len(str(lcm_upto(100)))} digits")
print(f"log lcm(1..1000) < 1.03883 * 1000: {rosser_holds(1000)}")

print("\n== Lambert W, lower branch ==")
y = -(1 / e_interval(256))
w = lambert_w_m1(y)
print(f"W(-1/e) = {w}")
print(f"contains -1: {w.contains(Fraction(-1))}")

y2 = IntervalScalar.from_int(-2, 256) * IntervalScalar.from_int(-2, 256).exp()
w2 = lambert_w_m1(y2)
print(f"W(-2 e^-2) encloses -2 with width {float(w2.width()):.2e}")

print("\nthe elementary two-sided bracket vs the bisection refinement:")
for t in (Fraction(0), Fraction(1), Fraction(10)):
    t_iv = IntervalScalar.from_fraction(t, 256)
    y = -((-(t_iv + 1)).exp())
    bracket = bracket_from_t(t_iv)
    refined = lambert_w_m1(y)
    print(f"t = {t}: bracket width {float(bracket.width()):.3f} -> "
          f"refined width {float(refined.width()):.2e}")
