"""Entropic functionals, all in bits.

Spectral values below ``SPECTRAL_FLOOR`` are treated as exact zeros
(``0 log 0 = 0``).  The relative entropy reports ``inf`` only when the
first argument puts more than ``SUPPORT_WEIGHT_TOL`` weight on the
(numerical) kernel of the second; the asymmetric pair keeps eigensolver
noise from producing spurious infinities.
"""

import math

import numpy as np

from . import linalg
from .states import DensityMatrix, as_matrix

SPECTRAL_FLOOR = 1e-12
SUPPORT_WEIGHT_TOL = 1e-10


def binary_entropy(x) -> float:
    if not -1e-15 <= x <= 1 + 1e-15:
        raise ValueError(f"binary entropy needs a probability, got {x}")
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    if np.any(p < -SPECTRAL_FLOOR):
        raise ValueError("probabilities must be nonnegative")
    p = p[p > SPECTRAL_FLOOR]
    return float(-np.sum(p * np.log2(p))) + 0.0


def spectrum(rho):
    """Eigenvalues of a density matrix, clamped into [0, 1]."""
    w = linalg.eigvalsh(as_matrix(rho))
    return np.clip(w, 0.0, 1.0)


def von_neumann_entropy(rho) -> float:
    return shannon_entropy(spectrum(rho))


def entropies(stack):
    """Von Neumann entropies of a stack of density matrices ``(..., n, n)``."""
    w = np.clip(linalg.eigvalsh(stack), 0.0, 1.0)
    logs = np.log2(np.where(w > SPECTRAL_FLOOR, w, 1.0))
    return -np.sum(w * logs, axis=-1)


def relative_entropy(rho, sigma) -> float:
    """``S(rho || sigma) = Tr rho log rho - Tr rho log sigma``; ``inf`` on support mismatch."""
    r, s = as_matrix(rho), as_matrix(sigma)
    if r.shape != s.shape:
        raise ValueError(f"shape mismatch {r.shape} vs {s.shape}")
    ws, vs = np.linalg.eigh(0.5 * (s + linalg.dagger(s)))
    weights = np.real(np.einsum("ij,jk,ki->i", linalg.dagger(vs), r, vs))
    kernel = ws < SPECTRAL_FLOOR
    if np.any(weights[kernel] > SUPPORT_WEIGHT_TOL):
        return math.inf
    cross = float(np.sum(weights[~kernel] * np.log2(ws[~kernel])))
    value = -von_neumann_entropy(r) - cross
    return max(value, 0.0)


def dephase(rho, basis="computational"):
    """Remove coherences in ``basis``.

    ``basis`` is ``"computational"``/``"energy"`` (the matrix basis, since
    Hamiltonians here are diagonal) or a unitary whose columns form the
    basis.
    """
    m = as_matrix(rho)
    if isinstance(basis, str):
        if basis not in ("computational", "energy"):
            raise ValueError(f"unknown basis {basis!r}")
        out = np.diag(np.diag(m))
    else:
        u = np.asarray(basis)
        probs = np.diag(linalg.dagger(u) @ m @ u)
        out = (u * probs) @ linalg.dagger(u)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(out, rho.dims, lenient=True)
    return out


def coherence_rel_entropy(rho) -> float:
    """Relative entropy of coherence ``S(Delta[rho]) - S(rho)``."""
    m = as_matrix(rho)
    value = shannon_entropy(np.clip(np.real(np.diag(m)), 0.0, 1.0)) - von_neumann_entropy(m)
    return max(value, 0.0)


def psd_sqrt(m):
    w, v = np.linalg.eigh(0.5 * (m + linalg.dagger(m)))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ linalg.dagger(v)


def fidelity(rho, sigma) -> float:
    """Root fidelity ``Tr sqrt(rho^1/2 sigma rho^1/2)``, clamped to [0, 1]."""
    r = psd_sqrt(as_matrix(rho))
    inner = r @ as_matrix(sigma) @ r
    w = np.clip(linalg.eigvalsh(inner), 0.0, None)
    return float(min(1.0, max(0.0, np.sum(np.sqrt(w)))))
