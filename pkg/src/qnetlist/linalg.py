"""Dense complex matrix/vector helpers.

Matrices and kets are plain ``numpy`` complex128 arrays; the functions here
add the dimension checks and the unitarity / phase-equivalence predicates the
rest of the compiler relies on.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

ATOL = 1e-9


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def as_ket(v) -> np.ndarray:
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1 or a.size < 1:
        raise ValueError(f"expected a non-empty vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector has non-finite entries")
    return a


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def apply(m, v) -> np.ndarray:
    m, v = as_matrix(m), as_ket(v)
    if m.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape} vs {v.shape}")
    return m @ v


def is_unitary(m, tol: float = ATOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    err = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
    return bool(err <= tol)


def phase_dist(a, b) -> float:
    """Frobenius (or l2) distance between ``a`` and ``b`` minimized over a
    global phase on ``b``.

    The optimal phase is arg(<b, a>); with a null overlap every phase is
    equally good and the plain distance is returned.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)
    if overlap != 0:
        b = b * (overlap / abs(overlap))
    return float(np.linalg.norm(a - b))


def n_qubits_for(dim: int) -> int:
    """Qubit count for a power-of-two dimension."""
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"dimension {dim} is not a power of 2")
    return dim.bit_length() - 1


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ]
    )


def rz(angle: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * angle), cmath.exp(0.5j * angle)])


def ry(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)
