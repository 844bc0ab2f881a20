"""Does diluting a resource before noise beat protecting it as is?

Each ``*_advantage`` function returns ``(lhs, rhs)``: the overall rate with
dilution into the given state and the rate without dilution.  Dilution
helps wherever ``lhs > rhs``.
"""

import math
import zlib
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import channels as ch
from . import states as st
from .functionals import binary_entropy, coherence_rel_entropy, entropies
from .rates import (
    ResourceTheory,
    _ratio,
    ed_phase_damped_pure,
    ed_singlet_phase_damped,
    coherence_rate,
    ed_correlated_noise,
    purity_rate,
    reversible_rate,
    thermal_rate,
)
from .sweep import SweepResult, RatePoint, boundary_limit, grid, sweep

PLUS = np.full((2, 2), 0.5, dtype=complex)


def named_rng(seed, name):
    """Independent generator per named search so streams never shift each other."""
    return np.random.default_rng([int(seed), zlib.crc32(name.encode())])


# entanglement -------------------------------------------------------------


def entanglement_advantage(lam, alpha):
    """Phase damping on Bob's qubit; dilution into ``cos a|00> + sin a|11>``."""
    if not 0.0 < alpha <= math.pi / 4 + 1e-12:
        raise ValueError("alpha must lie in (0, pi/4]")
    cost = binary_entropy(math.cos(alpha) ** 2)
    lhs = _ratio(ed_phase_damped_pure(alpha, lam), cost)
    return lhs, ed_singlet_phase_damped(lam)


def correlated_noise_advantage(n, probs, alpha):
    """Correlated Z noise on Bob's ``n`` qubits; rates per block of ``n`` pairs.

    ``lhs = E_d(Lambda_B[psi^(x)n]) / S(psi^A)`` and ``rhs = n - H(p)``.
    """
    if not 0.0 < alpha <= math.pi / 4 + 1e-12:
        raise ValueError("alpha must lie in (0, pi/4]")
    lhs = _ratio(ed_correlated_noise(n, probs, alpha), binary_entropy(math.cos(alpha) ** 2))
    return lhs, ed_correlated_noise(n, probs)


# coherence ----------------------------------------------------------------


def coherence_advantage(gamma, alpha, family="pure"):
    """Amplitude damping; dilution of ``|+>`` into the pure or mixed family."""
    pure, mixed = st.coherence_states(alpha)
    mu = {"pure": pure, "mixed": mixed}.get(family)
    if mu is None:
        raise ValueError(f"family must be 'pure' or 'mixed', got {family!r}")
    noise = ch.amplitude_damping(gamma)
    return coherence_rate(mu, noise), coherence_rel_entropy(noise.apply(PLUS))


def coherence_mixed_limit(gamma, eps=0.1):
    """``alpha -> 0`` limit of the mixed-family rate (maximally mixed dilution)."""
    return boundary_limit(lambda a: coherence_advantage(gamma, a, "mixed")[0], 0.0, eps=eps)


# thermodynamics ------------------------------------------------------------


def thermal_setup(T, p, energies=(0.0, 1.0)):
    gamma = st.gibbs(st.Hamiltonian(energies), T)
    return gamma, ch.thermal_dephasing_noise(p, gamma)


def _thermal_evaluator(T, p, energies):
    gamma, noise = thermal_setup(T, p, energies)
    g = gamma.mat
    rhs = thermal_rate(np.diag([0.0, 1.0]), noise, g)

    def evaluate(q):
        if not 0.0 <= q <= 1.0:
            raise ValueError("q must be a probability")
        return thermal_rate(np.diag([1.0 - q, q]), noise, g), rhs

    return evaluate


def thermal_advantage(T, p, q, energies=(0.0, 1.0)):
    """Excited qubit under ``p gamma + (1-p) Delta``; dilution into ``diag(1-q, q)``."""
    return _thermal_evaluator(T, p, energies)(q)


def thermal_sweep(T, p, n=200, energies=(0.0, 1.0), q_range=(0.0, 1.0), workers=None) -> SweepResult:
    qs = grid(q_range[0], q_range[1], n)
    return sweep(_thermal_evaluator(T, p, energies), qs, workers=workers)


def qmax_curve(p, temperatures, n_q=200, energies=(0.0, 1.0)) -> SweepResult:
    """Optimal ``q`` as a function of temperature.

    Points carry ``(T, q_max, best rate)``; the result's argmax fields
    refer to the ``q_max`` column.
    """
    points = []
    for T in sorted(temperatures):
        res = thermal_sweep(T, p, n_q, energies)
        points.append(RatePoint(float(T), res.argmax_param, res.max_rate))
    qmax = np.array([pt.lhs for pt in points])
    i = int(np.argmax(qmax))
    return SweepResult(points, points[i].parameter, float(qmax[i]))


# purity -------------------------------------------------------------------


def purity_depolarizing_sweep(p, q_range=(0.0, 0.5), n=100) -> SweepResult:
    """Depolarizing noise on ``diag(1-q, q)``; ``q = 1/2`` is the free state and is skipped."""
    noise = ch.depolarizing(p, 2)
    rhs = purity_rate(st.diagonal_qubit(0.0), noise, 2)
    qs = grid(q_range[0], q_range[1], n)
    return sweep(lambda q: (purity_rate(st.diagonal_qubit(q), noise, 2), rhs), qs)


@dataclass
class CorrelationReport:
    best_product: float
    best_correlated: float
    best_state: np.ndarray
    trials: int

    @property
    def excess(self):
        return self.best_correlated - self.best_product


def _bloch_ket(theta, phi):
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def _merit(channel, kets, k):
    """``1 - S(Lambda^(x)k [psi]) / k`` for a stack of kets."""
    kets = np.atleast_2d(kets)
    kets = kets / np.linalg.norm(kets, axis=1, keepdims=True)
    rho = np.einsum("ni,nj->nij", kets, kets.conj())
    ops = channel.kraus
    dims = (2,) * k
    for site in range(k):
        t = rho.reshape((-1,) + dims + dims)
        out = np.zeros_like(t)
        for op in ops:
            tmp = np.moveaxis(np.tensordot(t, op, axes=([1 + site], [1])), -1, 1 + site)
            tmp = np.moveaxis(np.tensordot(tmp, op.conj(), axes=([1 + k + site], [1])), -1, 1 + k + site)
            out += tmp
        rho = out.reshape(rho.shape)
    return 1.0 - entropies(rho) / k


def purity_correlation_search(channel, k=2, trials=10_000, seed=0, refine=5):
    """Compare the best product and the best (possibly entangled) pure ``k``-qubit input.

    Product optimum: single-qubit Bloch-sphere grid plus Nelder-Mead.
    Correlated optimum: ``trials`` Haar-random ``k``-qubit pure states, the
    ``refine`` best of which are polished by Nelder-Mead.
    """
    if channel.in_dim != 2:
        raise ValueError("the search is defined for qubit channels")

    def single(x):
        return float(_merit(channel, _bloch_ket(*x), 1)[0])

    thetas, phis = np.meshgrid(np.linspace(0, math.pi, 33), np.linspace(0, 2 * math.pi, 33))
    cands = np.array([_bloch_ket(t, f) for t, f in zip(thetas.ravel(), phis.ravel())])
    vals = _merit(channel, cands, 1)
    j = int(np.argmax(vals))
    res = minimize(lambda x: -single(x), [thetas.ravel()[j], phis.ravel()[j]], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000})
    best_product = max(float(vals[j]), -float(res.fun))

    rng = named_rng(seed, "purity_correlation_search")
    dim = 2 ** k
    kets = rng.normal(size=(trials, dim)) + 1j * rng.normal(size=(trials, dim))
    vals = np.concatenate([_merit(channel, chunk, k) for chunk in np.array_split(kets, max(1, trials // 2000))])
    order = np.argsort(vals)[::-1][:refine]
    best_val, best_ket = float(vals[order[0]]), kets[order[0]]

    def joint(x):
        return -float(_merit(channel, x[:dim] + 1j * x[dim:], k)[0])

    for idx in order:
        x0 = np.concatenate([kets[idx].real, kets[idx].imag])
        r = minimize(joint, x0, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 4000})
        if -r.fun > best_val:
            best_val, best_ket = -float(r.fun), r.x[:dim] + 1j * r.x[dim:]
    best_ket = best_ket / np.linalg.norm(best_ket)
    return CorrelationReport(best_product, best_val, best_ket, trials)


# general resource theories --------------------------------------------------


def _noisy(mu, channel, theory):
    m = st.as_matrix(mu)
    if theory.kind == "entanglement" and channel.in_dim < m.shape[0]:
        return ch.apply_local(channel, st.DensityMatrix(m, st.dims_of(mu, (2, 2)), lenient=True), 1)
    return channel.apply(m)


def composed_rate(psi, mu, channel, theory: ResourceTheory):
    """``R(psi -> mu) * R(Lambda[mu] -> psi)``; for entanglement the noise acts on Bob."""
    return reversible_rate(psi, mu, theory) * reversible_rate(_noisy(mu, channel, theory), psi, theory)


def dilution_advantage(psi, mu, channel, theory: ResourceTheory):
    """``(R(psi->mu) R(Lambda[mu]->psi), R(Lambda[psi]->psi))``."""
    return composed_rate(psi, mu, channel, theory), reversible_rate(_noisy(psi, channel, theory), psi, theory)
