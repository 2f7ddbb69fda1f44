"""
Weighted bounds with derivatives and a shifted weight
=====================================================

The kernel 1/(x+y)^lambda with n-th derivatives and power weights.  The
constant C uses Gamma(lambda/p - n) Gamma(lambda/q - n) / Gamma(lambda).
A shift gamma in the weights changes the constant to C'.  The form with the
same shift on both sides is checked against the dilation f(x) -> f(tx).
"""

import math

from hilbert_forge import (
    HolderPair,
    IntegratedMonomialExponential,
    KernelParams,
    MonomialExponential,
    verify_weighted_integral,
)

pair = HolderPair(2)

# unshifted constant, first derivatives, f = 1 - e^-x
f = IntegratedMonomialExponential(0.0, 1.0, 1)
r = verify_weighted_integral(f, f, pair, KernelParams(3.0, 0.0, 1), "C")
print(f"C form, n=1: lhs = {r.lhs:.10f}, rhs = {r.rhs:.10f}, {r.verdict.value}")

# shifted form: dilating both functions by t multiplies the ratio by t^(-2 gamma)
params = KernelParams(1.0, -0.25, 0)
print("\n   t   same-shift ratio   opposite-shift ratio")
for t in (0.25, 1.0, 4.0, 16.0):
    g = MonomialExponential(0.0, t)
    same = verify_weighted_integral(g, g, pair, params, "C_prime")
    balanced = verify_weighted_integral(g, g, pair, params, "C_prime_balanced")
    print(f"{t:5g}   {same.ratio:16.6f}   {balanced.ratio:20.6f}")

# at t = 1 the exact value is 1 / (Gamma(3/4)^2 Gamma(3/2) / 2^(3/2))
print(f"\nexact same-shift ratio at t=1: {2**1.5 / (math.gamma(0.75) ** 2 * math.gamma(1.5)):.6f}")
