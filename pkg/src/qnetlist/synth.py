"""Lower two-level unitaries to the {u3, cx} alphabet on a fully connected
register.

Basis index convention: qubit 0 is the most significant bit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qnetlist.circuit import Circuit, Gate
from qnetlist.decompose import DecompResult, Op, PhaseOp, TwoLevelOp
from qnetlist.linalg import is_unitary, ry, rz

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
# lowest-magnitude entry we still take the phase of
_ARG_FLOOR = 1e-14


@dataclass(frozen=True)
class Euler:
    """u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def matrix(self) -> np.ndarray:
        return cmath.exp(1j * self.alpha) * rz(self.beta) @ ry(self.gamma) @ rz(self.delta)

    def u3_params(self) -> tuple[float, float, float]:
        """(theta, phi, lambda) with U3 equal to ``matrix()`` up to global phase."""
        return self.gamma, self.beta, self.delta


def zyz(u) -> Euler:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u, 1e-9):
        raise ValueError("zyz needs a 2x2 unitary")
    alpha = cmath.phase(np.linalg.det(u)) / 2
    v = cmath.exp(-1j * alpha) * u
    gamma = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    plus = 2 * cmath.phase(v[1, 1]) if abs(v[1, 1]) > _ARG_FLOOR else 0.0
    minus = 2 * cmath.phase(v[1, 0]) if abs(v[1, 0]) > _ARG_FLOOR else 0.0
    return Euler(alpha, (plus + minus) / 2, gamma, (plus - minus) / 2)


def u3_gate(qubit: int, u) -> Gate:
    return Gate.u3(qubit, *zyz(u).u3_params())


def x_gate(qubit: int) -> Gate:
    return Gate.u3(qubit, math.pi, 0.0, math.pi)


def unitary_sqrt(u) -> np.ndarray:
    """Principal square root of a 2x2 unitary via its (Schur) eigendecomposition."""
    t, z = scipy.linalg.schur(np.asarray(u, dtype=complex), output="complex")
    return z @ np.diag(np.sqrt(np.diag(t))) @ z.conj().T


def controlled_u(control: int, target: int, u) -> list[Gate]:
    """Two-CX controlled-U: U = e^{ia} A X B X C with ABC = I."""
    e = zyz(u)
    a = Gate.u3(target, e.gamma / 2, e.beta, 0.0)
    b = Gate.u3(target, -e.gamma / 2, 0.0, -(e.delta + e.beta) / 2)
    c = Gate.u3(target, 0.0, 0.0, (e.delta - e.beta) / 2)
    return [c, Gate.cx(control, target), b, Gate.cx(control, target), a,
            Gate.u3(control, 0.0, 0.0, e.alpha)]


def _is_x(u) -> bool:
    return np.allclose(u, PAULI_X, rtol=0.0, atol=1e-12)


def multi_control_expand(controls, target: int, u) -> list[Gate]:
    """Ancilla-free multi-controlled U (all controls active on |1>).

    For c >= 2 controls, with V = sqrt(U) and ``last`` the final control::

        C_last(V), C^{c-1}X(rest -> last), C_last(V^dag),
        C^{c-1}X(rest -> last), C^{c-1}V(rest -> target)

    See :func:`mcu_gate_count` for the resulting gate counts.
    """
    controls = list(controls)
    if len(set(controls)) != len(controls) or target in controls:
        raise ValueError("controls must be distinct and exclude the target")
    u = np.asarray(u, dtype=complex)
    if not controls:
        return [u3_gate(target, u)]
    if len(controls) == 1:
        if _is_x(u):
            return [Gate.cx(controls[0], target)]
        return controlled_u(controls[0], target, u)
    *rest, last = controls
    v = unitary_sqrt(u)
    return (
        controlled_u(last, target, v)
        + multi_control_expand(rest, last, PAULI_X)
        + controlled_u(last, target, v.conj().T)
        + multi_control_expand(rest, last, PAULI_X)
        + multi_control_expand(rest, target, v)
    )


def mcu_gate_count(n_controls: int, is_x: bool = False) -> int:
    """Gates emitted by :func:`multi_control_expand`.

    1 for no controls, 6 for one control (1 when U is exactly X), and
    26 * 3**(c-2) - 6 for c >= 2 (valid whenever sqrt(U) is not X).
    """
    if n_controls == 0:
        return 1
    if n_controls == 1:
        return 1 if is_x else 6
    return 26 * 3 ** (n_controls - 2) - 6


def _qubit(bit: int, n: int) -> int:
    return n - 1 - (bit.bit_length() - 1)


def _controlled_on_pattern(n: int, target_bit: int, pattern: int, u) -> list[Gate]:
    """U on ``target_bit`` conditioned on every other qubit matching ``pattern``."""
    target = _qubit(target_bit, n)
    controls, flips = [], []
    for q in range(n):
        if q == target:
            continue
        controls.append(q)
        if not pattern >> (n - 1 - q) & 1:
            flips.append(x_gate(q))
    return flips + multi_control_expand(controls, target, u) + flips


def two_level_to_gates(op: Op, n: int) -> list[Gate]:
    """Gates whose unitary equals ``op`` embedded in an n-qubit register.

    Indices differing in several bits are first brought to Hamming distance
    one by a CX fan-out from the lowest differing bit, then the block becomes
    a multi-controlled single-qubit gate on that bit.
    """
    dim = 1 << n
    if isinstance(op, PhaseOp):
        if not 0 <= op.index < dim:
            raise ValueError(f"index {op.index} out of range for {n} qubits")
        u = np.diag([1.0, op.phase]) if op.index & 1 else np.diag([op.phase, 1.0])
        return _controlled_on_pattern(n, 1, op.index, u)

    k, j = op.k, op.j
    if not (0 <= j < dim and 0 <= k < dim):
        raise ValueError(f"indices ({k}, {j}) out of range for {n} qubits")
    diff = j ^ k
    tbit = diff & -diff
    chain = [Gate.cx(_qubit(tbit, n), _qubit(b, n))
             for b in (1 << i for i in range(n)) if diff & b and b != tbit]

    def fan(x: int) -> int:
        return x ^ (diff ^ tbit) if x & tbit else x

    k2 = fan(k)
    b = op.block
    u = b if not k2 & tbit else np.array([[b[1, 1], b[1, 0]], [b[0, 1], b[0, 0]]])
    return chain + _controlled_on_pattern(n, tbit, k2, u) + chain


def synth_circuit(d: DecompResult) -> Circuit:
    """Circuit whose unitary is ``ops[0] @ ... @ ops[-1]``: the rightmost op runs first."""
    c = Circuit(d.n_qubits)
    for op in reversed(d.ops):
        c.extend(two_level_to_gates(op, d.n_qubits))
    return c
