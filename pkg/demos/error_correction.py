"""Three-qubit phase-flip code against dilution.

Bob encodes his half of a singlet into three qubits, each gets an
independent phase flip, and he corrects and decodes.  We compare the
resulting hashing rate with dilution and with doing nothing.
"""

import numpy as np

from resdil import channels, qec, rates

print("   p      qec       dilution  nothing")
for p in (0.01, 0.05, 0.1, 0.2, 0.3, 0.45):
    print(f"  {p:4.2f}   {qec.ed_qec_phase_flip(p):.5f}   {qec.ed_dil_phase_flip(p):.5f}   "
          f"{qec.ed_nothing_phase_flip(p):.5f}")

# the simulated round reproduces the closed form
out = qec.phase_flip_round(channels.phase_flip(0.1))
print()
print("simulated decoded state differs from the closed form by",
      f"{np.max(np.abs(out.mat - qec.decoded_closed_form(0.1))):.1e}")
print(f"its hashing rate {rates.hashing_rate(out):.6f}, failure probability {qec.p_fail(0.1, 1):.3f}")

print()
print("general Pauli noise")
for probs in ((0.9, 0.0, 0.0, 0.1), (0.85, 0.05, 0.05, 0.05), (0.8, 0.02, 0.08, 0.1)):
    rep = qec.pauli_compare(probs, u_grid=8)
    print(f"  {probs}: qec {rep.ed_qec_bound:.4f}  dilution {rep.ed_dil_bound:.4f}  "
          f"nothing {rep.ed_nothing_bound:.4f}  -> {rep.winner}")
