#!/usr/bin/env python3
"""Tour of the exact p-adic layer: valuations, finite-precision values,
and the certified p-adic logarithm."""

from fractions import Fraction

from plogbound import PadicValue, eval_linear_form, padic_log, padic_valuation
from plogbound.bounds import ProblemInstance
from plogbound.pade import AlphaVector

p = 7

print("== valuations ==")
for x in (Fraction(49, 3), Fraction(9, 14), Fraction(0), Fraction(-343)):
    print(f"v_{p}({x}) = {padic_valuation(x, p)}")

print("\n== p-adic values ==")
x = PadicValue.from_rational(Fraction(98, 5), p, 6)
print(f"98/5 as a {p}-adic value: {x}")
print(f"|98/5|_{p} = {x.abs_p()}")

print("\n== the p-adic logarithm ==")
# log(1+t) converges for |t|_p < 1; the truncation index comes from the
# explicit term-valuation bound, so the returned coset is certified
L = padic_log(Fraction(p), p, 10)
print(f"log(1+{p}) = {L}")
print(f"valuation is exactly 1 for an odd prime: {L.valuation == 1}")

# group law: log((1+p)^2) = 2 log(1+p)
lhs = padic_log(Fraction(2 * p + p * p), p, 10)
rhs = L.mul_rational(2)
print(f"log((1+p)^2) == 2 log(1+p) within shared precision: {lhs.same_coset(rhs)}")

print("\n== a full linear form ==")
av = AlphaVector.build(p, [Fraction(p), Fraction(2 * p)])
inst = ProblemInstance.build(p, av, H=50, lambdas=(9, 4, -3))
value = eval_linear_form(inst)
print(f"Lambda = 9 + 4 log(1+{p}) - 3 log(1+{2*p})")
print(f"pinned valuation: {value.valuation}  =>  |Lambda|_p = {p}^-{value.valuation}")
