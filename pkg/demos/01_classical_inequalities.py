"""
The classical integral and series inequalities
==============================================

Both sides of the integral and discrete inequalities with kernel 1/(x+y),
evaluated with certified error bars on a few easy inputs.
"""

from hilbert_forge import (
    Geometric,
    HolderPair,
    MonomialExponential,
    hilbert_constant,
    verify_hilbert_discrete,
    verify_hilbert_integral,
)

# the constant pi/sin(pi/p) is smallest at p = 2
for p in (1.25, 1.5, 2.0, 3.0, 5.0):
    print(f"p = {p:<5} constant = {hilbert_constant(HolderPair(p)):.12f}")

# f = g = e^-x: the left side is exactly 1, the right side pi/2
pair = HolderPair(2)
f = MonomialExponential(0.0, 1.0)
r = verify_hilbert_integral(f, f, pair)
print(f"\nintegral: lhs = {r.lhs:.12f} ± {r.lhs_error:.1e}, rhs = {r.rhs:.12f}, {r.verdict.value}")

# geometric sequences r^m: the double sum resums along diagonals m + n = s
for ratio in (0.1, 0.5, 0.9):
    rep = verify_hilbert_discrete(Geometric(ratio), Geometric(ratio), pair)
    print(f"series r={ratio}: lhs = {rep.lhs:.12f} ± {rep.lhs_error:.1e}, ratio = {rep.ratio:.4f}")
