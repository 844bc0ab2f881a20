"""Dense complex linear algebra for small (up to a few qubits) operators.

Matrices are plain ``numpy.ndarray`` objects.  Everything here is a pure
function; inputs are never modified.
"""

from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadDims, NotHermitian

HERM_TOL = 1e-10
RECON_TOL = 1e-10
JACOBI_TOL = 1e-14


class EigDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    """Real eigenvalues in ascending order."""
    eigenvectors: np.ndarray
    """Unitary matrix whose columns are the matching eigenvectors."""


def dagger(m):
    return np.conjugate(np.transpose(m))


def kron(*mats):
    """Kronecker product of one or more matrices, left to right."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in mats))


def hermiticity_defect(h) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - dagger(h)))) if h.size else 0.0


def check_hermitian(h, tol=HERM_TOL):
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    defect = hermiticity_defect(h)
    if defect > tol:
        raise NotHermitian(f"max |h - h^dagger| = {defect:.3e} exceeds {tol:.1e}")
    return h


def jacobi_eigh(h, tol=JACOBI_TOL, max_sweeps=64):
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of the pivot ``h[p, q]`` with a
    diagonal unitary and then applies a real Givens rotation, so the
    accumulated transform stays exactly unitary.  Iterates until the
    off-diagonal Frobenius mass drops below ``tol`` (relative to the
    Frobenius norm when that exceeds one).
    """
    a = np.array(check_hermitian(h), dtype=complex)
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mod = abs(b)
                if mod < 1e-300:
                    continue
                phase = b / mod
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mod)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # plane rotation: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = dagger(rot) @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigDecomposition(w[order], v[:, order])


def hermitian_eig(h, method="lapack"):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    the dependency-free :func:`jacobi_eigh`.  Raises :class:`NotHermitian`
    when ``h`` is not Hermitian to within ``HERM_TOL``.
    """
    h = check_hermitian(h)
    if method == "jacobi":
        return jacobi_eigh(h)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, v = np.linalg.eigh(0.5 * (h + dagger(h)))
    return EigDecomposition(w, v)


def eigvalsh(h):
    """Eigenvalues only; accepts stacks of matrices (``..., n, n``)."""
    h = np.asarray(h)
    return np.linalg.eigvalsh(0.5 * (h + np.conjugate(np.swapaxes(h, -1, -2))))


def _check_dims(dims, size):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims) or int(np.prod(dims)) != size:
        raise BadDims(f"subsystem dims {dims} do not multiply to {size}")
    return dims


def partial_trace(rho, dims: Sequence[int], keep):
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` is an
    index or an iterable of indices.  The kept subsystems stay in their
    original order.
    """
    rho = np.asarray(rho)
    dims = _check_dims(dims, rho.shape[0])
    keep = sorted({int(keep)} if np.isscalar(keep) else {int(k) for k in keep})
    n = len(dims)
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise BadDims(f"keep={keep} is not a nonempty subset of range({n})")
    t = rho.reshape(dims + dims)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    t = np.einsum(t, row + col, out)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def permute_subsystems(rho, dims: Sequence[int], order: Sequence[int]):
    """Reorder tensor factors: new subsystem ``k`` is old subsystem ``order[k]``."""
    rho = np.asarray(rho)
    dims = _check_dims(dims, rho.shape[0])
    n = len(dims)
    if sorted(order) != list(range(n)):
        raise BadDims(f"{order} is not a permutation of range({n})")
    t = rho.reshape(dims + dims)
    t = np.transpose(t, list(order) + [n + k for k in order])
    return t.reshape(rho.shape)


def trace_norm(m) -> float:
    """Sum of singular values, ``Tr sqrt(M^dagger M)``."""
    m = np.asarray(m)
    if hermiticity_defect(m) <= HERM_TOL:
        return float(np.sum(np.abs(eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def is_unitary(u, tol=RECON_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))) <= tol)
