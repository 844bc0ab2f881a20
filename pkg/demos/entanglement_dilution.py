"""Phase damping on half of an entangled pair: dilute first, or send singlets?

Alice keeps one qubit and Bob's qubit goes through phase damping.  Instead
of sending singlets directly we can first dilute them into weaker pairs
``cos a|00> + sin a|11>``, send those, distill, and count singlets out per
singlet in.
"""

import math

import numpy as np

from resdil import dilution, rates

lam = 0.5
print(f"phase damping strength lambda = {lam}")
print(f"singlets sent directly: {rates.ed_singlet_phase_damped(lam):.6f} singlets out per singlet in")
print()
print("   alpha    diluted rate")
for a in np.linspace(0.05, math.pi / 4, 8):
    lhs, rhs = dilution.entanglement_advantage(lam, a)
    print(f"  {a:6.3f}    {lhs:.6f}   {'better' if lhs > rhs + 1e-12 else 'same'}")

# the closed form agrees with a full density-matrix simulation
a = 0.3
sim = rates.hashing_rate(rates.phase_damped_state(a, lam))
print()
print(f"closed form vs simulation at alpha={a}: {rates.ed_phase_damped_pure(a, lam):.12f} / {sim:.12f}")

# weaker pairs are better; the rate keeps creeping up toward 1 - lambda
for a in (1e-2, 1e-3, 1e-4):
    print(f"alpha={a:.0e}: rate {dilution.entanglement_advantage(lam, a)[0]:.4f}")
