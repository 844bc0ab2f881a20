import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from resdil import linalg
from resdil import states as st
from resdil.errors import BadDims, NotHermitian
from strategies import hermitian_matrices, seeds

I2 = np.eye(2)
Z = st.PAULI_Z
X = st.PAULI_X


def test_kron_identity_and_pauli():
    assert np.array_equal(linalg.kron(I2, I2), np.eye(4))
    assert np.array_equal(linalg.kron(Z, Z), np.diag([1, -1, -1, 1]))


def test_kron_block_layout(rng):
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(3, 3))
    k = linalg.kron(a, b)
    for i in range(2):
        for j in range(2):
            assert np.allclose(k[3 * i:3 * i + 3, 3 * j:3 * j + 3], a[i, j] * b)


def test_kron_trace_multiplies(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert abs(np.trace(linalg.kron(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


@given(seeds)
def test_kron_associative_on_integers(seed):
    r = np.random.default_rng(seed)
    a, b, c = (r.integers(-5, 6, size=(2, 2)) for _ in range(3))
    assert np.array_equal(linalg.kron(linalg.kron(a, b), c), linalg.kron(a, linalg.kron(b, c)))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eig_small_cases(method):
    w, _ = linalg.hermitian_eig(np.diag([0.25, 0.75]), method)
    assert np.allclose(w, [0.25, 0.75])
    w, _ = linalg.hermitian_eig(X, method)
    assert np.allclose(w, [-1.0, 1.0])


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eig_random_8x8_reconstruction(rng, method):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = a + a.conj().T
    w, v = linalg.hermitian_eig(h, method)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) < linalg.RECON_TOL
    assert linalg.is_unitary(v)
    assert np.all(np.diff(w) >= 0)


@given(hermitian_matrices(max_dim=12))
def test_jacobi_matches_lapack(h):
    w_j, v_j = linalg.jacobi_eigh(h)
    w_l = np.linalg.eigvalsh(h)
    scale = max(1.0, np.max(np.abs(w_l)))
    assert np.max(np.abs(w_j - w_l)) < 1e-11 * scale
    assert np.max(np.abs((v_j * w_j) @ v_j.conj().T - h)) < linalg.RECON_TOL * scale
    assert linalg.is_unitary(v_j)


def test_jacobi_degenerate_spectrum(rng):
    u = st.random_unitary(6, rng)
    h = u @ np.diag([1, 1, 1, -2, -2, 5.0]) @ u.conj().T
    w, v = linalg.jacobi_eigh(h)
    assert np.allclose(w, [-2, -2, 1, 1, 1, 5], atol=1e-12)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) < 1e-10


def test_jacobi_32x32(rng):
    a = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    h = (a + a.conj().T) / 2
    w, v = linalg.jacobi_eigh(h)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) < linalg.RECON_TOL


def test_not_hermitian_raises():
    m = np.array([[1.0, 1.0], [0.0, 1.0]])
    for method in ("lapack", "jacobi"):
        with pytest.raises(NotHermitian):
            linalg.hermitian_eig(m, method)
    # just inside the tolerance is accepted
    linalg.hermitian_eig(np.array([[1.0, 5e-11], [0.0, 1.0]]))


def test_unknown_eigensolver():
    with pytest.raises(ValueError):
        linalg.hermitian_eig(I2, "qr")


def test_partial_trace_examples():
    rho = st.diagonal_qubit(0.3).mat
    sigma = st.coherence_states(0.4)[0].mat
    assert np.allclose(linalg.partial_trace(np.kron(rho, sigma), (2, 2), [0]), rho, atol=1e-12)
    assert np.allclose(linalg.partial_trace(st.singlet().mat, (2, 2), [0]), I2 / 2)
    ket01 = np.kron(st.KET_0, st.KET_1)
    assert np.allclose(linalg.partial_trace(np.outer(ket01, ket01), (2, 2), [1]), np.diag([0, 1]))


@given(seeds)
def test_partial_trace_factorizes(seed):
    r = np.random.default_rng(seed)
    a, b, c = (st.random_density_matrix(d, r).mat for d in (2, 3, 2))
    full = linalg.kron(a, b, c)
    assert np.max(np.abs(linalg.partial_trace(full, (2, 3, 2), [1]) - b)) < 1e-12
    assert np.max(np.abs(linalg.partial_trace(full, (2, 3, 2), [0, 2]) - np.kron(a, c))) < 1e-12
    assert abs(np.trace(linalg.partial_trace(full, (2, 3, 2), [2])) - 1) < 1e-12


def test_partial_trace_bad_dims():
    with pytest.raises(BadDims):
        linalg.partial_trace(np.eye(4) / 4, (2, 3), [0])
    with pytest.raises(BadDims):
        linalg.partial_trace(np.eye(4) / 4, (2, 2), [2])
    with pytest.raises(BadDims):
        linalg.partial_trace(np.eye(4) / 4, (2, 2), [])


def test_permute_subsystems_swaps_factors(rng):
    a, b = st.random_density_matrix(2, rng).mat, st.random_density_matrix(3, rng).mat
    assert np.allclose(linalg.permute_subsystems(np.kron(a, b), (2, 3), (1, 0)), np.kron(b, a))
    with pytest.raises(BadDims):
        linalg.permute_subsystems(np.kron(a, b), (2, 3), (0, 0))


def test_trace_norm_examples():
    assert abs(linalg.trace_norm(I2) - 2) < 1e-12
    assert abs(linalg.trace_norm(Z) - 2) < 1e-12
    assert abs(linalg.trace_norm(np.diag([1.0, 0.0]) - I2 / 2) - 1) < 1e-12
    # non-Hermitian input goes through singular values
    assert abs(linalg.trace_norm(np.array([[0, 2.0], [0, 0]])) - 2) < 1e-12


@given(seeds)
def test_trace_norm_triangle(seed):
    r = np.random.default_rng(seed)
    hs_ = []
    for _ in range(3):
        a = r.normal(size=(4, 4)) + 1j * r.normal(size=(4, 4))
        hs_.append(a + a.conj().T)
    a, b, c = hs_
    assert linalg.trace_norm(a + b + c) <= linalg.trace_norm(a) + linalg.trace_norm(b) + linalg.trace_norm(c) + 1e-9


@given(hs.integers(min_value=1, max_value=5), seeds)
def test_eig_of_random_hermitian_is_real_and_unitary(n, seed):
    r = np.random.default_rng(seed)
    a = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    w, v = linalg.hermitian_eig(a + a.conj().T)
    assert w.dtype.kind == "f"
    assert linalg.is_unitary(v)
