"""Small dense complex linear algebra for qubit states.

Matrices are plain ``numpy`` complex128 arrays. Qubit 0 is the leftmost tensor
factor, i.e. the most significant bit of a basis index, so the two-qubit basis
order is |00>, |01>, |10>, |11>.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError, NotHermitianError

TAU_EIG = 1e-12
TAU_HERM = 1e-10

MAX_DENSE_QUBITS = 24
_MAX_JACOBI_SWEEPS = 100


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex128 array with finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix contains NaN or infinite entries")
    return arr


def basis_index(bits: Sequence[int]) -> int:
    """Index of |b0 b1 ... b_{N-1}> with qubit 0 as the most significant bit."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def hermiticity_defect(m) -> tuple[float, tuple[int, int]]:
    """Largest |m[i,j] - conj(m[j,i])| and the entry pair where it occurs."""
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"matrix is not square: shape {arr.shape}")
    diff = np.abs(arr - arr.conj().T)
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[i, j]), (int(i), int(j))


def check_hermitian(m, tol: float = TAU_HERM) -> np.ndarray:
    arr = as_matrix(m)
    defect, (i, j) = hermiticity_defect(arr)
    if defect > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: |m[{i},{j}] - conj(m[{j},{i}])| = {defect:.3e} > {tol:.0e}"
        )
    return arr


def _jacobi_symmetric(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < TAU_EIG * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0
    return np.sort(np.diag(a))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    A complex Hermitian ``H = A + iB`` is embedded as the real symmetric
    ``[[A, -B], [B, A]]``, whose spectrum is that of ``H`` with every value
    doubled; one copy of each pair is returned.
    """
    arr = check_hermitian(m)
    h = 0.5 * (arr + arr.conj().T)
    re, im = h.real, h.imag
    if not np.any(im):
        return _jacobi_symmetric(re)
    embedded = np.block([[re, -im], [im, re]])
    return _jacobi_symmetric(embedded)[::2].copy()


def _cofactor_det(a: np.ndarray) -> complex:
    n = a.shape[0]
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    total = 0j
    for j in range(n):
        if a[0, j] == 0:
            continue
        minor = np.delete(a[1:], j, axis=1)
        sign = -1.0 if j % 2 else 1.0
        total += sign * a[0, j] * _cofactor_det(minor)
    return total


def _lu_det(a: np.ndarray) -> complex:
    a = a.copy()
    n = a.shape[0]
    det = 1.0 + 0j
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0:
            return 0j
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return complex(det)


def determinant(m) -> complex:
    """Cofactor expansion up to 4x4; partial-pivoting LU beyond that."""
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"determinant of non-square matrix {arr.shape}")
    if arr.shape[0] <= 4:
        return _cofactor_det(arr)
    return _lu_det(arr)


def partial_trace(state_density, n_qubits: int, keep: tuple[int, int] = (0, 1)) -> np.ndarray:
    """Reduce an N-qubit density matrix to the ordered qubit pair ``keep``.

    The result is expressed in the basis |k0 k1> with ``keep[0]`` as the
    leftmost factor.
    """
    n = int(n_qubits)
    if n < 2:
        raise DomainError(f"need at least 2 qubits, got {n}")
    if n > MAX_DENSE_QUBITS:
        raise DomainError(f"dense partial trace limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    k0, k1 = (int(k) for k in keep)
    if k0 == k1 or not (0 <= k0 < n and 0 <= k1 < n):
        raise DomainError(f"keep must be two distinct qubits in [0, {n}), got {keep}")
    rho = as_matrix(state_density)
    dim = 1 << n
    if rho.shape != (dim, dim):
        raise DimensionError(f"expected {dim}x{dim} matrix for {n} qubits, got {rho.shape}")

    t = rho.reshape((2,) * (2 * n))
    others = [q for q in range(n) if q not in (k0, k1)]
    # row qubit q -> axis q, column qubit q -> axis n + q
    perm = [k0, k1, *others, n + k0, n + k1, *(n + q for q in others)]
    rest = 1 << (n - 2)
    t = t.transpose(perm).reshape(4, rest, 4, rest)
    return np.einsum("aibi->ab", t)


def partial_transpose_2(rho) -> np.ndarray:
    """Transpose the second-qubit indices: out[m mu, n nu] = rho[m nu, n mu]."""
    arr = as_matrix(rho)
    if arr.shape != (4, 4):
        raise DimensionError(f"partial transpose needs a 4x4 matrix, got {arr.shape}")
    return arr.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4).copy()
