"""Correlated Z noise on blocks of Bob's qubits.

Each block of n qubits gets a Z pattern with a fixed probability.  Sending
singlets keeps ``n - H(p)`` per block; diluted pairs keep more.
"""

import numpy as np

from resdil import dilution
from resdil.cli import S2_PROBS, S3_PROBS

for n, probs in ((2, S2_PROBS), (3, S3_PROBS)):
    print(f"n = {n}, pattern probabilities {probs}")
    for a in (0.05, 0.2, 0.4, np.pi / 4):
        lhs, rhs = dilution.correlated_noise_advantage(n, probs, a)
        print(f"  alpha={a:.3f}: diluted {lhs:.5f}  singlets {rhs:.5f}")
