"""Three-qubit phase-flip code protecting Bob's half of a maximally entangled pair.

Qubit order is ``(A, B1, B2, B3)``; the stabilizer-style observables
``X2 X3`` and ``X3 X4`` act on ``(B1, B2)`` and ``(B2, B3)``.  The logical
qubit is ``B1``, the ancillas ``B2, B3`` start in ``|+>``.
"""

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import minimize

from . import channels as ch
from . import linalg
from . import states as st
from .functionals import binary_entropy, entropies
from .rates import ed_phase_damped_pure, hashing_rate
from .states import HADAMARD, PAULI_I, PAULI_X, PAULI_Z, PAULIS, DensityMatrix

N_QUBITS = 4
DIMS = (2,) * N_QUBITS
DEFAULT_ALPHA = 0.25


def _on(op, qubit):
    """``op`` acting on one of the four qubits (0 = Alice)."""
    return linalg.kron(*[op if k == qubit else PAULI_I for k in range(N_QUBITS)])


def _cnot(control, target, n=3):
    u = np.zeros((2 ** n, 2 ** n))
    for b in range(2 ** n):
        bits = [(b >> (n - 1 - k)) & 1 for k in range(n)]
        bits[target] ^= bits[control]
        u[int("".join(map(str, bits)), 2), b] = 1.0
    return u


# |+> -> |+++>, |-> -> |--->: the bit-flip repetition encoder conjugated by Hadamards
_H3 = linalg.kron(HADAMARD, HADAMARD, HADAMARD)
ENCODER = _H3 @ _cnot(0, 2) @ _cnot(0, 1) @ _H3
ENCODER_AB = np.kron(PAULI_I, ENCODER)

X23 = _on(PAULI_X, 1) @ _on(PAULI_X, 2)
X34 = _on(PAULI_X, 2) @ _on(PAULI_X, 3)

RECOVERY = {
    (+1, +1): np.eye(2 ** N_QUBITS),
    (+1, -1): _on(PAULI_Z, 3),
    (-1, +1): _on(PAULI_Z, 1),
    (-1, -1): _on(PAULI_Z, 2),
}


@dataclass(frozen=True)
class SyndromeOutcome:
    x23: int
    x34: int
    probability: float
    post_state: np.ndarray
    """Normalized state after projection (before recovery); zero matrix if the outcome is impossible."""


@dataclass(frozen=True)
class PauliProbs:
    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        v = self.as_array()
        if np.any(v < 0) or np.any(v > 1) or abs(v.sum() - 1) > 1e-12:
            raise ValueError(f"Pauli probabilities must be a distribution, got {v}")

    @classmethod
    def from_xyz(cls, p1, p2, p3):
        return cls(1.0 - (p1 + p2 + p3), p1, p2, p3)

    def as_array(self):
        return np.array([self.p0, self.p1, self.p2, self.p3], dtype=float)

    def cyclic_rotated(self) -> "PauliProbs":
        """Cyclic relabelling that puts the largest of ``p1..p3`` in the Z slot.

        With ``k`` the (first) index of the largest weight, returns
        ``(p_{k+1}, p_{k+2}, p_k)``, indices taken cyclically in 1..3.
        """
        xyz = [self.p1, self.p2, self.p3]
        k = int(np.argmax(xyz))
        return PauliProbs(self.p0, xyz[(k + 1) % 3], xyz[(k + 2) % 3], xyz[k])


def phase_flip_encode(pair=None) -> DensityMatrix:
    """Encode Bob's half of ``pair`` (default: the singlet) into three qubits."""
    pair_ket = st.singlet_ket() if pair is None else np.asarray(pair, dtype=complex).ravel()
    ket = ENCODER_AB @ np.kron(pair_ket / np.linalg.norm(pair_ket), np.kron(st.KET_PLUS, st.KET_PLUS))
    return st.projector(ket, DIMS)


def encoded_phi_plus_ket():
    """``(|+,+++> + |-,--->) / sqrt 2``, the code state of ``|phi+>``."""
    plus3 = linalg.kron(st.KET_PLUS, st.KET_PLUS, st.KET_PLUS)
    minus3 = linalg.kron(st.KET_MINUS, st.KET_MINUS, st.KET_MINUS)
    return (np.kron(st.KET_PLUS, plus3) + np.kron(st.KET_MINUS, minus3)) / math.sqrt(2)


def apply_bob_noise(rho, noise):
    """Independent copies of a qubit channel on ``B1, B2, B3``."""
    m = st.as_matrix(rho)
    for q in (1, 2, 3):
        m = ch.apply_local(noise, m, q, dims=DIMS)
    return m


def syndrome_projector(x23, x34):
    eye = np.eye(2 ** N_QUBITS)
    return (eye + x23 * X23) / 2 @ (eye + x34 * X34) / 2


def syndrome_outcomes(rho):
    """Projective measurement of ``X2 X3`` and ``X3 X4``; one entry per outcome pair."""
    m = st.as_matrix(rho)
    out = []
    for x23, x34 in product((+1, -1), repeat=2):
        proj = syndrome_projector(x23, x34)
        branch = proj @ m @ proj
        prob = float(np.trace(branch).real)
        post = branch / prob if prob > 1e-15 else np.zeros_like(branch)
        out.append(SyndromeOutcome(x23, x34, prob, post))
    return out


def correct(rho):
    """Measure the syndrome and apply the recovery table, summing over outcomes."""
    m = np.zeros((2 ** N_QUBITS,) * 2, dtype=complex)
    for o in syndrome_outcomes(rho):
        r = RECOVERY[(o.x23, o.x34)]
        m += o.probability * (r @ o.post_state @ linalg.dagger(r))
    return m


def decode(rho):
    """Undo the encoder and discard the two ancillas."""
    m = linalg.dagger(ENCODER_AB) @ st.as_matrix(rho) @ ENCODER_AB
    return linalg.partial_trace(m, DIMS, [0, 1])


def run_code(noise, pair=None):
    """Encode, apply ``noise`` to each of Bob's qubits, correct, decode."""
    rho = apply_bob_noise(phase_flip_encode(pair), noise)
    return DensityMatrix(decode(correct(rho)), (2, 2), lenient=True)


def phase_flip_round(noise) -> DensityMatrix:
    """Decoded two-qubit state when the singlet is protected against ``noise``."""
    if noise.in_dim != 2:
        raise ch.DimMismatch("the code protects against single-qubit noise")
    return run_code(noise)


def success_weight(p):
    """Probability of at most one phase flip among three qubits."""
    return (1 - p) ** 3 + 3 * p * (1 - p) ** 2


def decoded_closed_form(p) -> np.ndarray:
    w = success_weight(p)
    s = st.singlet().mat
    z = np.kron(PAULI_I, PAULI_Z)
    return w * s + (1 - w) * z @ s @ z


def intermediate_check_post_recovery(p, pair=None) -> np.ndarray:
    """Four-qubit state after recovery for phase-flip noise of strength ``p``."""
    return correct(apply_bob_noise(phase_flip_encode(pair), ch.phase_flip(p)))


def post_recovery_closed_form(p, pair=None):
    enc = phase_flip_encode(pair).mat
    zzz = _on(PAULI_Z, 1) @ _on(PAULI_Z, 2) @ _on(PAULI_Z, 3)
    w = success_weight(p)
    return w * enc + (1 - w) * zzz @ enc @ zzz


def p_fail(p, t) -> float:
    """Probability that a ``2t+1`` repetition code sees more than ``t`` flips."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = 2 * t + 1
    return float(sum(math.comb(n, k) * p ** k * (1 - p) ** (n - k) for k in range(t + 1, n + 1)))


def ed_qec_phase_flip(p) -> float:
    return 1.0 - binary_entropy(success_weight(p))


def ed_dil_phase_flip(p, alpha=DEFAULT_ALPHA) -> float:
    """Per-singlet rate of diluting into ``cos a|00> + sin a|11>`` before phase-flip noise."""
    inner = max(0.0, 1.0 - 2.0 * p * (1.0 - p) * (1.0 - math.cos(4.0 * alpha)))
    return 1.0 - binary_entropy(0.5 * (1.0 + math.sqrt(inner))) / binary_entropy(math.cos(alpha) ** 2)


def ed_nothing_phase_flip(p) -> float:
    return 1.0 - binary_entropy(1.0 - p)


# general Pauli noise -------------------------------------------------------


def pauli_qec_decoded(p, pair=None) -> DensityMatrix:
    """Decoded state for Pauli noise on each of Bob's qubits, by full simulation."""
    probs = p.as_array() if isinstance(p, PauliProbs) else np.asarray(p, dtype=float)
    return run_code(ch.pauli_channel(probs), pair)


def theta_matrix(p) -> np.ndarray:
    """Closed-form decoded state for ``|phi+>`` input, basis ``(++, +-, -+, --)``."""
    _, p1, p2, p3 = p.as_array() if isinstance(p, PauliProbs) else p
    a = 0.5 * (-1 + p2 + p3) ** 2 * (1 + 2 * p3 + 2 * p2)
    b = -0.5 * (p2 + p3) ** 2 * (-3 + 2 * p2 + 2 * p3)
    c = -0.5 * (-p2 + p3) ** 2 * (-3 + 6 * p1 + 4 * p2 + 2 * p3)
    d = 0.5 * (-1 + 2 * p1 + p2 + p3) ** 2 * (1 - 2 * p1 - 4 * p2 + 2 * p3)
    return np.array([[a, 0, 0, d], [0, b, c, 0], [0, c, b, 0], [d, 0, 0, a]], dtype=float)


def to_plus_minus_basis(rho):
    hh = np.kron(HADAMARD, HADAMARD)
    return hh @ st.as_matrix(rho) @ hh


def euler_unitary(a, b, c):
    """``Rz(a) Ry(b) Rz(c)``."""
    rz = lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    ry = np.array([[math.cos(b / 2), -math.sin(b / 2)], [math.sin(b / 2), math.cos(b / 2)]])
    return rz(a) @ ry @ rz(c)


def _dilution_bounds(probs, angles, alpha):
    """``(S(rho_B) - S(rho)) / h(cos^2 a)`` for a batch of Euler angle triples."""
    angles = np.atleast_2d(angles)
    a, b, c = angles[:, 0], angles[:, 1], angles[:, 2]
    ea, ec = np.exp(-0.5j * a), np.exp(-0.5j * c)
    cb, sb = np.cos(b / 2), np.sin(b / 2)
    # Rz(a) Ry(b) Rz(c), batched
    u = np.empty((len(a), 2, 2), dtype=complex)
    u[:, 0, 0] = ea * cb * ec
    u[:, 0, 1] = -ea * sb * np.conj(ec)
    u[:, 1, 0] = np.conj(ea) * sb * ec
    u[:, 1, 1] = np.conj(ea) * cb * np.conj(ec)
    ket = st.pure_two_qubit_ket(alpha).reshape(2, 2)
    kets = np.einsum("ij,njk->nik", ket, np.transpose(u, (0, 2, 1)))  # (1 (x) U)|psi>
    rho = np.einsum("nab,ncd->nabcd", kets, kets.conj())
    out = np.zeros_like(rho)
    for w, s in zip(probs, PAULIS):
        if w == 0:
            continue
        t = np.einsum("xb,nabcd->naxcd", s, rho)
        out += w * np.einsum("naxcd,yd->naxcy", t, s.conj())
    rho_ab = out.reshape(-1, 4, 4)
    rho_b = np.einsum("nabad->nbd", out)
    cost = binary_entropy(math.cos(alpha) ** 2)
    return (entropies(rho_b) - entropies(rho_ab)) / cost


def dilution_bound(p, alpha=DEFAULT_ALPHA, u_grid=16, refine=True):
    """Best ``B E_d^dil`` over Bob's pre-rotation ``U``; returns ``(bound, angles)``.

    Heuristic: an Euler-angle grid followed by Nelder-Mead polishing.  Grid
    ties resolve to the lexicographically smallest angles.
    """
    if u_grid < 8:
        raise ValueError("u_grid must be at least 8 per Euler angle")
    probs = p.as_array() if isinstance(p, PauliProbs) else np.asarray(p, dtype=float)
    ax = np.linspace(0, 2 * math.pi, u_grid, endpoint=False)
    bx = np.linspace(0, math.pi, u_grid)
    angles = np.array(list(product(ax, bx, ax)))
    vals = _dilution_bounds(probs, angles, alpha)
    i = int(np.argmax(vals))
    best, best_angles = float(vals[i]), angles[i]
    if refine:
        res = minimize(lambda x: -float(_dilution_bounds(probs, x, alpha)[0]), best_angles,
                       method="Nelder-Mead", options={"xatol": 1e-8, "fatol": 1e-10, "maxiter": 2000})
        if -res.fun > best:
            best, best_angles = -float(res.fun), res.x
    return best, np.asarray(best_angles)


@dataclass(frozen=True)
class PauliComparison:
    probs: PauliProbs
    ed_qec_bound: float
    ed_dil_bound: float
    ed_nothing_bound: float
    dil_angles: tuple

    @property
    def winner(self):
        bounds = {"qec": self.ed_qec_bound, "dilution": self.ed_dil_bound, "nothing": self.ed_nothing_bound}
        return max(bounds, key=bounds.get)


def pauli_compare(p, u_grid=16, alpha=DEFAULT_ALPHA, refine=True) -> PauliComparison:
    """Hashing lower bounds for error correction, dilution and doing nothing."""
    p = p if isinstance(p, PauliProbs) else PauliProbs(*p)
    qec = hashing_rate(pauli_qec_decoded(p.cyclic_rotated()), "A")
    nothing = hashing_rate(ch.apply_local(ch.pauli_channel(p.as_array()), st.singlet(), 1), "A")
    dil, angles = dilution_bound(p, alpha, u_grid, refine)
    return PauliComparison(p, qec, dil, nothing, tuple(float(x) for x in angles))


def ed_dil_substitution(p, alpha=DEFAULT_ALPHA):
    """Dilution rate via the phase-damping closed form with ``lambda = 1 - (1-2p)^2``."""
    return ed_phase_damped_pure(alpha, ch.phase_flip_to_damping(p)) / binary_entropy(math.cos(alpha) ** 2)
