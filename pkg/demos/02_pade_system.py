#!/usr/bin/env python3
"""The simultaneous Pade system in exact rational arithmetic: the common
denominator polynomial, the numerators, the scaled integer values, the
determinant identity, and the remainder values."""

from fractions import Fraction

from plogbound.pade import (
    AlphaVector,
    B_values_at,
    build_pade,
    closed_form_delta,
    determinant_delta,
    eval_B_at_one,
    order_check,
    remainder_S,
    select_nonzero_row,
    sigma_coeffs,
)

# two rational arguments, denominators cleared by Q = 15
alphas = AlphaVector.build(None, [Fraction(2, 3), Fraction(-1, 5)])
print(f"alphas = {[str(a) for a in alphas.entries]}, Q = {alphas.Q}, M = {alphas.M}")

k, mu = 2, 1
print(f"\n== construction at k = {k}, mu = {mu} ==")
print("sigma coefficients:", [str(s) for s in sigma_coeffs(k, alphas)])
poly = build_pade(k, mu, alphas)
print("A0 coefficients:", [str(c) for c in poly.A0])
for j, numer in enumerate(poly.Aj, start=1):
    print(f"A{j} coefficients:", [str(c) for c in numer])

print("\n== approximation order ==")
for j in (1, 2):
    res = order_check(poly, j)
    print(f"j = {j}: formal order of the remainder >= {res.target}: {res.ok}")

print("\n== values at t = 1 ==")
system = eval_B_at_one(poly)
print("B values:", [str(b) for b in system.B_values])
print("Q^(mk+m) * B values (exact integers):", system.scaled_B)

print("\n== determinant of the B matrix ==")
for t in (Fraction(1), Fraction(-1, 3)):
    det = determinant_delta(k, alphas, t)
    closed = closed_form_delta(k, alphas, t)
    print(f"t = {t}: direct = {det}")
    print(f"        closed form (up to sign) = {closed}, match: {abs(det) == abs(closed)}")

print("\n== the nonzero integer combination ==")
system = select_nonzero_row(k, alphas, (5, -2, 1))
print(f"smallest mu with T nonzero: mu = {system.mu}, T = {system.T}")

print("\n== p-adic remainder values ==")
p_alphas = AlphaVector.build(5, [Fraction(5), Fraction(10)])
s = remainder_S(2, 1, 1, p_alphas, target_precision=6)
print(f"S(1) for the first argument at p = 5: {s}")
print(f"remainder estimate floor: v >= {p_alphas.min_valuation * 7 - 1}")
