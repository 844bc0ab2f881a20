"""Noise models as Kraus channels and direct affine maps.

Every channel exposes ``apply(rho)`` and a Kraus realization via
``kraus``.  Maps that are naturally affine (depolarizing, the thermal
dephasing noise) evaluate directly and build their Kraus operators only
on demand.
"""

from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimMismatch
from .states import PAULIS, PAULI_Z, DensityMatrix, as_matrix, dims_of

CPTP_TOL = 1e-10


class Channel:
    """Base class: a completely positive trace-preserving map on ``in_dim``."""

    in_dim: int

    @property
    def kraus(self):
        raise NotImplementedError

    def _apply_matrix(self, m):
        return sum(k @ m @ linalg.dagger(k) for k in self.kraus)

    def apply(self, rho, lenient=True):
        m = as_matrix(rho)
        if m.shape != (self.in_dim, self.in_dim):
            raise DimMismatch(f"channel acts on dimension {self.in_dim}, state has {m.shape[0]}")
        out = self._apply_matrix(m)
        if isinstance(rho, DensityMatrix):
            return DensityMatrix(out, rho.dims, lenient=lenient)
        return out

    __call__ = apply

    def completeness_defect(self) -> float:
        total = sum(linalg.dagger(k) @ k for k in self.kraus)
        return float(np.max(np.abs(total - np.eye(self.in_dim))))

    def is_cptp(self, tol=CPTP_TOL) -> bool:
        return self.completeness_defect() <= tol


class QuantumChannel(Channel):
    """Channel given by an explicit list of Kraus operators."""

    def __init__(self, kraus: Sequence, check=True, name=None):
        ops = [np.asarray(k, dtype=complex) for k in kraus]
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise DimMismatch("Kraus operators must be square and of equal size")
        self._kraus = tuple(ops)
        self.in_dim = d
        self.name = name
        if check and not self.is_cptp():
            raise ValueError(f"Kraus operators violate completeness by {self.completeness_defect():.3e}")

    @property
    def kraus(self):
        return self._kraus

    def __repr__(self):
        label = self.name or "QuantumChannel"
        return f"<{label}: {len(self._kraus)} Kraus ops on dim {self.in_dim}>"


def identity_channel(d=2) -> QuantumChannel:
    return QuantumChannel([np.eye(d)], name="identity")


def _check_prob(x, name):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def phase_damping(lam) -> QuantumChannel:
    _check_prob(lam, "lambda")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - lam)]])
    k1 = np.array([[0, 0], [0, np.sqrt(lam)]])
    return QuantumChannel([k0, k1], name=f"phase_damping({lam:g})")


def amplitude_damping(gamma) -> QuantumChannel:
    _check_prob(gamma, "gamma")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]])
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]])
    return QuantumChannel([k0, k1], name=f"amplitude_damping({gamma:g})")


def phase_flip(p) -> QuantumChannel:
    """``(1-p) rho + p Z rho Z``; equal to ``phase_damping(1 - (1-2p)^2)`` for ``p <= 1/2``."""
    _check_prob(p, "p")
    return QuantumChannel([np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * PAULI_Z], name=f"phase_flip({p:g})")


def phase_flip_to_damping(p):
    return 1.0 - (1.0 - 2.0 * p) ** 2


def pauli_channel(p) -> QuantumChannel:
    """``sum_i p_i sigma_i rho sigma_i`` with ``sigma = (1, X, Y, Z)``."""
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
        raise ValueError(f"Pauli weights must be a probability 4-vector, got {p}")
    return QuantumChannel([np.sqrt(pi) * s for pi, s in zip(p, PAULIS)], name="pauli")


def correlated_z_noise(n, probs) -> QuantumChannel:
    """Correlated phase flips on ``n`` qubits.

    ``probs[k]`` weights the pattern whose binary expansion (most
    significant bit first) says which of qubits 1..n receive a Z.
    """
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (2 ** n,) or np.any(probs < 0) or abs(probs.sum() - 1) > 1e-12:
        raise ValueError(f"need a probability vector of length {2 ** n}")
    ops = []
    for pattern, weight in zip(product((0, 1), repeat=n), probs):
        factors = [PAULI_Z if bit else np.eye(2) for bit in pattern]
        ops.append(np.sqrt(weight) * linalg.kron(*factors))
    return QuantumChannel(ops, name=f"correlated_z({n})")


def weyl_operators(d):
    """The ``d^2`` clock-and-shift unitaries ``X^a Z^b``."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            for a in range(d) for b in range(d)]


class Depolarizing(Channel):
    """``rho -> p 1/d + (1-p) rho``."""

    def __init__(self, p, d=2):
        _check_prob(p, "p")
        self.p = float(p)
        self.in_dim = int(d)

    def _apply_matrix(self, m):
        return self.p * np.trace(m) * np.eye(self.in_dim) / self.in_dim + (1 - self.p) * m

    @cached_property
    def kraus(self):
        d, p = self.in_dim, self.p
        ops = weyl_operators(d)
        weights = [1 - p + p / d ** 2] + [p / d ** 2] * (d ** 2 - 1)
        return tuple(np.sqrt(w) * u for w, u in zip(weights, ops))

    def __repr__(self):
        return f"<Depolarizing p={self.p:g} d={self.in_dim}>"


def depolarizing(p, d=2) -> Depolarizing:
    return Depolarizing(p, d)


class ThermalDephasingNoise(Channel):
    """``rho -> p gamma + (1-p) Delta[rho]`` for a state ``gamma`` diagonal in
    the energy basis.  Gibbs-preserving and coherence-destroying.
    """

    def __init__(self, p, gamma_state):
        _check_prob(p, "p")
        g = as_matrix(gamma_state)
        if np.max(np.abs(g - np.diag(np.diag(g)))) > 1e-12:
            raise ValueError("reference state must be diagonal in the energy basis")
        self.p = float(p)
        self.populations = np.real(np.diag(g)).copy()
        self.in_dim = g.shape[0]

    def _apply_matrix(self, m):
        diag = np.real(np.diag(m))
        return np.diag(self.p * np.trace(m).real * self.populations + (1 - self.p) * diag).astype(complex)

    @cached_property
    def kraus(self):
        # |j><i| with weight p*g_j + (1-p)*delta_ij: d^2 operators
        d = self.in_dim
        ops = []
        for i in range(d):
            for j in range(d):
                w = self.p * self.populations[j] + (1 - self.p) * (i == j)
                k = np.zeros((d, d), dtype=complex)
                k[j, i] = np.sqrt(w)
                ops.append(k)
        return tuple(ops)


def thermal_dephasing_noise(p, gamma_state) -> ThermalDephasingNoise:
    return ThermalDephasingNoise(p, gamma_state)


def extend_id_tensor(ch: Channel, left_dims=(), right_dims=()) -> QuantumChannel:
    """``1_left (x) ch (x) 1_right`` as a Kraus channel."""
    left = int(np.prod(left_dims)) if len(left_dims) else 1
    right = int(np.prod(right_dims)) if len(right_dims) else 1
    ops = [np.kron(np.kron(np.eye(left), k), np.eye(right)) for k in ch.kraus]
    return QuantumChannel(ops, check=False, name=f"extended({getattr(ch, 'name', None) or type(ch).__name__})")


def apply(ch: Channel, rho, lenient=True):
    return ch.apply(rho, lenient=lenient)


def apply_local(ch: Channel, rho, target, dims=None, lenient=True):
    """Apply ``ch`` to subsystem ``target`` of a multipartite state.

    Works on the reshaped tensor, so cost does not scale with the full
    Kraus list of the extended channel.
    """
    m = as_matrix(rho)
    dims = tuple(dims) if dims is not None else dims_of(rho)
    if dims[target] != ch.in_dim:
        raise DimMismatch(f"subsystem {target} has dim {dims[target]}, channel acts on {ch.in_dim}")
    n = len(dims)
    t = m.reshape(dims + dims)
    out = np.zeros_like(t, dtype=complex)
    for k in ch.kraus:
        # contract k on the row index and conj(k) on the column index of `target`
        tmp = np.tensordot(k, t, axes=([1], [target]))
        tmp = np.moveaxis(tmp, 0, target)
        tmp = np.tensordot(tmp, k.conj(), axes=([n + target], [1]))
        out += np.moveaxis(tmp, -1, n + target)
    out = out.reshape(m.shape)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(out, dims, lenient=lenient)
    return out


def channel_distance(a: Channel, b: Channel) -> float:
    """Max entrywise difference of the two maps on all matrix units ``|i><j|``."""
    if a.in_dim != b.in_dim:
        raise DimMismatch("channels act on different dimensions")
    d = a.in_dim
    worst = 0.0
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            worst = max(worst, float(np.max(np.abs(a._apply_matrix(e) - b._apply_matrix(e)))))
    return worst


def channels_equal(a: Channel, b: Channel, tol=1e-10) -> bool:
    return channel_distance(a, b) <= tol
