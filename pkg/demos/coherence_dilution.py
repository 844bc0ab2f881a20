"""Amplitude damping acting on coherence.

The source is ``|+>``.  We compare sending it directly with first diluting
it into a pure family ``cos a|0> + sin a|1>`` or a mixed family of the same
diagonal.
"""

import math

import numpy as np

from resdil import dilution
from resdil.sweep import grid, sweep

gamma = 0.9
_, direct = dilution.coherence_advantage(gamma, math.pi / 4, "pure")
print(f"amplitude damping gamma = {gamma}; sending |+> directly keeps {direct:.4f}")

pure = sweep(lambda a: dilution.coherence_advantage(gamma, a, "pure"), grid(0, math.pi / 2, 400, open_lo=True))
print(f"best pure-family target: alpha = {pure.argmax_param:.4f}, rate {pure.max_rate:.4f}")

print()
print("mixed family (rate grows as the target approaches the maximally mixed state)")
for a in (1.0, 0.5, 0.2, 0.1, 0.05):
    print(f"  alpha={a:<5} rate {dilution.coherence_advantage(gamma, a, 'mixed')[0]:.5f}")
limit = dilution.coherence_mixed_limit(gamma)
print(f"  extrapolated alpha -> 0: {limit:.6f}   (ln 19 / 18 = {np.log(19) / 18:.6f})")
