"""
How close the constant is to optimal
====================================

The truncated power x^(-1/p) on [1, T] nearly saturates the integral
inequality.  The ratio lhs/rhs creeps toward 1 like 1 - c/ln T.
"""

import math

from hilbert_forge import HolderPair
from hilbert_forge.sharpness import probe_discrete, probe_integral, write_probe_csv

pair = HolderPair(2)
rows = [probe_integral(pair, T) for T in (1e1, 1e2, 1e3, 1e4, 1e8)]
print("       T      ratio   (1 - ratio) ln T")
for r in rows:
    print(f"{r.probe:8.0e}   {r.ratio:.6f}   {(1 - r.ratio) * math.log(r.probe):.4f}")

# the discrete analogue with m^(-1/p) for m <= N
print()
print(write_probe_csv([probe_discrete(pair, N) for N in (2, 10, 1000)]), end="")
