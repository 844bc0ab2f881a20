"""State families: Bell states, diluted pure states, coherence families, Gibbs states."""

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg
from .errors import BadDims

TRACE_TOL = 1e-10
PSD_TOL = 1e-10

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)

# |psi-> = (i sigma_y (x) 1)|phi+>: an Alice-side unitary, so it commutes with
# anything Bob does and leaves every entropic quantity unchanged.
SINGLET_RELABEL = np.kron(PAULI_Y, PAULI_I)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix together with its subsystem dimensions.

    With ``lenient=True`` the matrix is hermitized and eigenvalues slightly
    below zero (numerical noise from channel applications) are clipped,
    without renormalizing the trace.
    """

    mat: np.ndarray
    dims: tuple = field(default=None)
    lenient: bool = field(default=False, repr=False)

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise BadDims(f"density matrix must be square, got shape {m.shape}")
        dims = (m.shape[0],) if self.dims is None else tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != m.shape[0]:
            raise BadDims(f"dims {dims} inconsistent with size {m.shape[0]}")
        if self.lenient:
            m = 0.5 * (m + linalg.dagger(m))
        linalg.check_hermitian(m)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr:.12g} differs from 1")
        w, v = np.linalg.eigh(0.5 * (m + linalg.dagger(m)))
        if w[0] < -PSD_TOL:
            raise ValueError(f"minimum eigenvalue {w[0]:.3e} is negative")
        if self.lenient and w[0] < 0:
            m = (v * np.clip(w, 0, None)) @ linalg.dagger(v)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def ptrace(self, keep) -> "DensityMatrix":
        keep = [keep] if np.isscalar(keep) else list(keep)
        sub = linalg.partial_trace(self.mat, self.dims, keep)
        return DensityMatrix(sub, tuple(self.dims[k] for k in sorted(keep)), lenient=True)

    def is_pure(self, tol=1e-10) -> bool:
        return abs(np.trace(self.mat @ self.mat).real - 1.0) <= tol

    def allclose(self, other, atol=1e-10) -> bool:
        return bool(np.max(np.abs(self.mat - np.asarray(other))) <= atol)


def as_matrix(rho) -> np.ndarray:
    return np.asarray(rho.mat if isinstance(rho, DensityMatrix) else rho)


def dims_of(rho, default=None):
    if isinstance(rho, DensityMatrix):
        return rho.dims
    if default is not None:
        return tuple(default)
    return (np.asarray(rho).shape[0],)


def projector(ket, dims=None) -> DensityMatrix:
    ket = np.asarray(ket, dtype=complex).ravel()
    ket = ket / np.linalg.norm(ket)
    return DensityMatrix(np.outer(ket, ket.conj()), dims)


@dataclass(frozen=True)
class Hamiltonian:
    """Diagonal Hamiltonian given by its energy levels (``k = 1`` units)."""

    energies: tuple

    def __post_init__(self):
        e = tuple(float(x) for x in self.energies)
        if len(e) < 2 or not all(np.isfinite(e)):
            raise ValueError("a Hamiltonian needs at least two finite energies")
        object.__setattr__(self, "energies", e)

    @property
    def matrix(self):
        return np.diag(np.array(self.energies, dtype=complex))


def pure_two_qubit_ket(alpha):
    """cos(alpha)|00> + sin(alpha)|11>."""
    ket = np.zeros(4, dtype=complex)
    ket[0], ket[3] = np.cos(alpha), np.sin(alpha)
    return ket


def pure_two_qubit(alpha) -> DensityMatrix:
    if not -1e-12 <= alpha <= np.pi / 2 + 1e-12:
        raise ValueError("alpha must lie in [0, pi/2]")
    return projector(pure_two_qubit_ket(alpha), (2, 2))


def singlet_ket():
    return np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def singlet() -> DensityMatrix:
    return projector(singlet_ket(), (2, 2))


def phi_plus() -> DensityMatrix:
    return projector([1, 0, 0, 1], (2, 2))


def psi_plus() -> DensityMatrix:
    return projector([0, 1, 1, 0], (2, 2))


def copies_ket(amplitudes, n):
    """``n`` copies of sum_i a_i|ii>, reordered as (A_1..A_n, B_1..B_n)."""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    d = len(amplitudes)
    ket = np.zeros(d ** (2 * n), dtype=complex)
    for idx in product(range(d), repeat=n):
        flat = 0
        for i in idx + idx:
            flat = flat * d + i
        ket[flat] = np.prod(amplitudes[list(idx)])
    return ket


def pure_two_qubit_copies(alpha, n) -> DensityMatrix:
    """``n`` copies of cos(alpha)|00> + sin(alpha)|11>, ordered A-block then B-block."""
    return projector(copies_ket([np.cos(alpha), np.sin(alpha)], n), (2,) * (2 * n))


def singlet_copies(n) -> DensityMatrix:
    """``n`` singlets ordered (A_1..A_n, B_1..B_n)."""
    ket = singlet_ket()
    for _ in range(n - 1):
        ket = np.kron(ket, singlet_ket())
    rho = np.outer(ket, ket.conj())
    order = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    return DensityMatrix(linalg.permute_subsystems(rho, (2,) * (2 * n), order), (2,) * (2 * n))


def coherence_states(alpha):
    """Pure ``cos a|0> + sin a|1>`` and mixed ``sin^2 a |+><+| + cos^2 a 1/2``."""
    if not -1e-12 <= alpha <= np.pi / 2 + 1e-12:
        raise ValueError("alpha must lie in [0, pi/2]")
    pure = projector([np.cos(alpha), np.sin(alpha)])
    plus = np.outer(KET_PLUS, KET_PLUS.conj())
    mixed = DensityMatrix(np.sin(alpha) ** 2 * plus + np.cos(alpha) ** 2 * np.eye(2) / 2)
    return pure, mixed


def gibbs_populations(energies, temperature):
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    e = np.asarray(energies, dtype=float)
    w = np.exp(-(e - e.min()) / temperature)
    return w / w.sum()


def gibbs(h: Hamiltonian, temperature) -> DensityMatrix:
    return DensityMatrix(np.diag(gibbs_populations(h.energies, temperature)).astype(complex))


def diagonal_qubit(q, basis_labels=("E0", "E1")) -> DensityMatrix:
    """``(1-q)|0><0| + q|1><1|`` in the given (energy or computational) basis.

    ``basis_labels`` only names the two levels; the matrix is always written
    in the basis where the Hamiltonian is diagonal.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be a probability")
    return DensityMatrix(np.diag([1.0 - q, q]).astype(complex))


def maximally_mixed(d) -> DensityMatrix:
    return DensityMatrix(np.eye(d, dtype=complex) / d)


def is_maximally_correlated(rho, tol=1e-10, basis=None) -> bool:
    """True if ``rho`` is supported on the span of ``|ii><jj|`` terms.

    ``basis`` optionally supplies a local unitary ``U_A (x) U_B`` to rotate
    into before the check (e.g. :data:`SINGLET_RELABEL`).
    """
    m = as_matrix(rho)
    dims = dims_of(rho, default=None)
    if len(dims) != 2 or dims[0] != dims[1]:
        d = int(round(np.sqrt(m.shape[0])))
        if d * d != m.shape[0]:
            raise BadDims("maximal correlation needs a d x d bipartite state")
        dims = (d, d)
    if basis is not None:
        m = basis @ m @ linalg.dagger(basis)
    d = dims[0]
    diag_idx = [i * d + i for i in range(d)]
    mask = np.ones(m.shape, dtype=bool)
    mask[np.ix_(diag_idx, diag_idx)] = False
    return bool(np.all(np.abs(m[mask]) < tol))


def random_density_matrix(d, rng, rank=None) -> DensityMatrix:
    """Ginibre-ensemble density matrix of dimension ``d``."""
    k = d if rank is None else rank
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    m = g @ linalg.dagger(g)
    return DensityMatrix(m / np.trace(m).real)


def random_pure_ket(d, rng):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_unitary(d, rng):
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def product_state(*states: Sequence) -> DensityMatrix:
    mats = [as_matrix(s) for s in states]
    dims = sum((tuple(dims_of(s)) for s in states), ())
    return DensityMatrix(linalg.kron(*mats), dims)
