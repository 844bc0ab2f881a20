"""Thermodynamic resources under partial thermalization.

A two-level system (energies 0 and 1, k = 1) at temperature T sees noise
``p gamma + (1 - p) Delta``.  The excited state can be diluted into
``diag(1 - q, q)`` first; the best q depends on T.
"""

import numpy as np

from resdil import dilution, states

T, p = 0.3, 0.9
print(f"T = {T}, p = {p}; Gibbs excited weight {states.gibbs_populations([0, 1], T)[1]:.4f}")
res = dilution.thermal_sweep(T, p, n=200)
print(f"no dilution: {res.points[-1].rhs:.6f}")
print(f"best target q = {res.argmax_param:.4f} with rate {res.max_rate:.6f}")

print()
print("optimal q as the temperature changes")
curve = dilution.qmax_curve(p, np.linspace(0.3, 3.0, 10), n_q=100)
for pt in curve.points:
    print(f"  T={pt.parameter:4.2f}  q_max={pt.lhs:.4f}")
