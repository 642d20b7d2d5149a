"""Exact statevector oracle.

Gates are applied as strided updates on the amplitude tensor; the full
2^n x 2^n operator is only built by :func:`circuit_unitary`.
"""

from __future__ import annotations

import numpy as np

from qnetlist.circuit import CX, U3, Circuit
from qnetlist.linalg import as_ket, u3_matrix

MAX_STATE_QUBITS = 20
MAX_UNITARY_QUBITS = 10


def _evolve(c: Circuit, amps: np.ndarray) -> np.ndarray:
    """Run ``c`` on ``amps`` of shape (2**n, batch); returns a new array."""
    n = c.n_qubits
    batch = amps.shape[1]
    psi = amps.reshape((2,) * n + (batch,)).copy()
    for g in c.gates:
        if g.kind == U3:
            q = g.qubits[0]
            m = u3_matrix(*g.params)
            psi = np.moveaxis(np.tensordot(m, psi, axes=([1], [q])), 0, q)
        elif g.kind == CX:
            ctl, tgt = g.qubits
            sel = [slice(None)] * psi.ndim
            sel[ctl] = 1
            sel = tuple(sel)
            axis = tgt - 1 if tgt > ctl else tgt
            psi[sel] = np.flip(psi[sel], axis=axis)
        # measure / barrier: no effect on the pre-measurement state
    return psi.reshape(1 << n, batch)


def simulate(c: Circuit, start=None) -> np.ndarray:
    n = c.n_qubits
    if n > MAX_STATE_QUBITS:
        raise ValueError(f"statevector simulation capped at {MAX_STATE_QUBITS} qubits")
    if start is None:
        start = np.zeros(1 << n, dtype=complex)
        start[0] = 1.0
    v = as_ket(start)
    if v.shape[0] != 1 << n:
        raise ValueError(f"state of size {v.shape[0]} does not fit {n} qubits")
    return _evolve(c, v.reshape(-1, 1))[:, 0]


def circuit_unitary(c: Circuit) -> np.ndarray:
    n = c.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ValueError(f"circuit_unitary capped at {MAX_UNITARY_QUBITS} qubits")
    return _evolve(c, np.eye(1 << n, dtype=complex))


def basis_state(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def success_rate(final, target) -> float:
    """Born probability |<target|final>|^2; ``target`` may be a basis index."""
    final = as_ket(final)
    if isinstance(target, (int, np.integer)):
        if not 0 <= target < final.shape[0]:
            raise ValueError(f"basis index {target} out of range")
        return float(abs(final[target]) ** 2)
    target = as_ket(target)
    if target.shape != final.shape:
        raise ValueError(f"dimension mismatch: {final.shape} vs {target.shape}")
    return float(abs(np.vdot(target, final)) ** 2)
