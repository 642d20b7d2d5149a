from functools import reduce

import numpy as np
import pytest

from qnetlist.circuit import CX, U3
from qnetlist.linalg import u3_matrix

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_unitary(dim, rng):
    """Haar-random unitary from the QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(dim, rng):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def cx_matrix(control, target, n):
    """Dense CX built from basis-state bit flips (qubit 0 = most significant)."""
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    cbit, tbit = 1 << (n - 1 - control), 1 << (n - 1 - target)
    for x in range(dim):
        m[x ^ tbit if x & cbit else x, x] = 1.0
    return m


def kron_unitary(circuit):
    """Circuit unitary as an explicit product of Kronecker-embedded gate
    matrices; independent of the tensor-stride simulator."""
    n = circuit.n_qubits
    total = np.eye(1 << n, dtype=complex)
    for g in circuit.gates:
        if g.kind == U3:
            q = g.qubits[0]
            factors = [np.eye(2)] * n
            factors[q] = u3_matrix(*g.params)
            m = reduce(np.kron, factors)
        elif g.kind == CX:
            m = cx_matrix(*g.qubits, n)
        else:
            continue
        total = m @ total
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
