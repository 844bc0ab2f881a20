"""Asymptotic conversion rates for entanglement, coherence, thermodynamics and purity."""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import channels as ch
from . import states as st
from .errors import BadDims, Degenerate
from .linalg import partial_trace
from .functionals import (
    binary_entropy,
    coherence_rel_entropy,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)

DEGENERATE_TOL = 1e-12


def _ratio(num, den):
    if not den > DEGENERATE_TOL:
        raise Degenerate(f"denominator {den:.3e} is below {DEGENERATE_TOL:.0e}")
    if math.isinf(den):
        raise Degenerate("denominator is infinite (support mismatch with the reference state)")
    return num / den


@dataclass(frozen=True)
class ResourceTheory:
    """Which resource is being counted, plus its free reference state if any."""

    kind: str
    reference_state: Optional[st.DensityMatrix] = field(default=None, compare=False)

    KINDS = ("entanglement", "coherence", "thermo", "purity")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown resource theory {self.kind!r}")
        if self.kind in ("thermo", "purity") and self.reference_state is None:
            raise ValueError(f"{self.kind} needs a reference state")

    @classmethod
    def entanglement(cls):
        return cls("entanglement")

    @classmethod
    def coherence(cls):
        return cls("coherence")

    @classmethod
    def thermo(cls, hamiltonian: st.Hamiltonian, temperature):
        return cls("thermo", st.gibbs(hamiltonian, temperature))

    @classmethod
    def purity(cls, d=2):
        return cls("purity", st.maximally_mixed(d))


def _bipartition(rho, split):
    dims = st.dims_of(rho)
    if len(dims) == 1:
        d = int(round(math.sqrt(dims[0])))
        dims = (d, d) if d * d == dims[0] else dims
    if len(dims) < 2:
        raise BadDims("hashing rate needs a bipartite state with subsystem dims")
    split = len(dims) // 2 if split is None else split
    if not 0 < split < len(dims):
        raise BadDims(f"split {split} does not cut {dims} into two parties")
    return dims, list(range(split)), list(range(split, len(dims)))


def hashing_rate(rho, side="A", split=None) -> float:
    """Coherent-information bound ``S(rho_side) - S(rho)``.

    ``split`` is the number of leading subsystems held by Alice (default:
    half).  ``side="best"`` returns the larger of the two one-sided values.
    Negative values are returned as they are.
    """
    if side == "best":
        return max(hashing_rate(rho, "A", split), hashing_rate(rho, "B", split))
    dims, a, b = _bipartition(rho, split)
    keep = {"A": a, "B": b}.get(side)
    if keep is None:
        raise ValueError(f"side must be 'A', 'B' or 'best', got {side!r}")
    m = st.as_matrix(rho)
    return von_neumann_entropy(partial_trace(m, dims, keep)) - von_neumann_entropy(m)


def ed_singlet_phase_damped(lam) -> float:
    """Distillable entanglement of a singlet after phase damping on Bob's half."""
    return 1.0 - binary_entropy((1.0 + math.sqrt(1.0 - lam)) / 2.0)


def ed_phase_damped_pure(alpha, lam) -> float:
    """Distillable entanglement of ``1 (x) PD_lam [cos a|00> + sin a|11>]`` (closed form)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    inner = max(0.0, 2.0 * lam * math.cos(4.0 * alpha) - 2.0 * lam + 4.0)
    return binary_entropy(math.cos(alpha) ** 2) - binary_entropy(min(1.0, 0.5 + math.sqrt(inner) / 4.0))


def phase_damped_state(alpha, lam) -> st.DensityMatrix:
    return ch.apply_local(ch.phase_damping(lam), st.pure_two_qubit(alpha), 1)


def correlated_noise_state(n, probs, alpha=None) -> st.DensityMatrix:
    """``Lambda_B`` applied to Bob's half of ``n`` singlets (``alpha=None``) or
    ``n`` copies of ``cos a|00> + sin a|11>``; subsystems ordered A-block, B-block."""
    rho = st.singlet_copies(n) if alpha is None else st.pure_two_qubit_copies(alpha, n)
    noise = ch.extend_id_tensor(ch.correlated_z_noise(n, probs), left_dims=(2,) * n)
    return noise.apply(rho)


def ed_correlated_noise(n, probs, alpha=None, method="closed") -> float:
    """Distillable entanglement after correlated Z noise on Bob's ``n`` qubits.

    Singlet branch (``alpha=None``): ``n - H(p)``.  Diluted branch:
    ``n h(cos^2 a) - S(Lambda_B[psi^(x)n])`` with the entropy taken from a
    full simulation.  ``method="simulate"`` forces the hashing rate of the
    simulated state for both branches.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    if method == "closed" and alpha is None:
        return n - shannon_entropy(probs)
    if method not in ("closed", "simulate"):
        raise ValueError(f"unknown method {method!r}")
    rho = correlated_noise_state(n, probs, alpha)
    if alpha is None or method == "simulate":
        return hashing_rate(rho, "A", split=n)
    return n * binary_entropy(math.cos(alpha) ** 2) - von_neumann_entropy(rho)


def coherence_rate(mu, channel) -> float:
    """``C(Lambda[mu]) / C(mu)``."""
    return _ratio(coherence_rel_entropy(channel.apply(st.as_matrix(mu))), coherence_rel_entropy(mu))


def thermal_rate(mu, noise, gamma) -> float:
    """``S(Lambda[mu] || gamma) / S(mu || gamma)``."""
    den = relative_entropy(mu, gamma)
    return _ratio(relative_entropy(noise.apply(st.as_matrix(mu)), gamma), den)


def purity_rate(mu, channel, d=None) -> float:
    """``S(Lambda[mu] || 1/d) / S(mu || 1/d)``."""
    m = st.as_matrix(mu)
    d = m.shape[0] if d is None else d
    ref = np.eye(d) / d
    return _ratio(relative_entropy(channel.apply(m), ref), relative_entropy(m, ref))


def resource_measure(rho, theory: ResourceTheory) -> float:
    """The quantity whose ratio gives asymptotic rates in a reversible setting."""
    if theory.kind == "coherence":
        return coherence_rel_entropy(rho)
    if theory.kind in ("thermo", "purity"):
        return relative_entropy(rho, theory.reference_state)
    # entanglement: exact for pure states, a hashing lower bound otherwise
    return hashing_rate(rho, "A")


def reversible_rate(rho, sigma, theory: ResourceTheory) -> float:
    """``R(rho -> sigma)`` as a ratio of resource measures.

    For entanglement the target must be pure (its entanglement cost is
    then the marginal entropy); the source may be mixed, in which case the
    hashing bound stands in for its distillable entanglement.
    """
    if theory.kind == "entanglement":
        target = sigma if isinstance(sigma, st.DensityMatrix) else st.DensityMatrix(sigma, (2, 2))
        if not target.is_pure(1e-9):
            raise ValueError("entanglement rates are only available into pure targets")
    return _ratio(resource_measure(rho, theory), resource_measure(sigma, theory))


def depolarizing_trajectory(rho0, t, d=None):
    """Point ``t`` of the depolarizing semigroup ``e^-t rho0 + (1-e^-t) 1/d``."""
    m = st.as_matrix(rho0)
    d = m.shape[0] if d is None else d
    decay = math.exp(-t)
    return decay * m + (1.0 - decay) * np.eye(d) / d
