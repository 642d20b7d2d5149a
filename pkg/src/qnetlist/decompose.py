"""Reduce a unitary, a target state or a permutation to two-level unitaries.

Every entry point returns a :class:`DecompResult` whose ``ops`` multiply, left
to right, to the input operator::

    ops[0] @ ops[1] @ ... @ ops[-1] == U

For state preparation the same product maps ``e_0`` to the target state up to
``residual_phase``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qnetlist.encoding import BasisOrder
from qnetlist.errors import DecompositionError
from qnetlist.linalg import is_unitary, n_qubits_for

ZERO_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class TwoLevelOp:
    """A 2x2 unitary ``block`` acting on span{e_k, e_j}.

    The block is laid out in the basis order (e_k, e_j), matching the Givens
    rotation form [[g_kk, g_kj], [g_jk, g_jj]]. ``j`` is the row the rotation
    nulls and ``k`` the partner row; ``column`` records which column was being
    reduced (None for ops not produced by elimination).
    """

    j: int
    k: int
    block: np.ndarray
    column: int | None = None

    def __post_init__(self):
        if self.j == self.k:
            raise ValueError("two-level op needs distinct indices")
        b = np.asarray(self.block, dtype=complex)
        if b.shape != (2, 2) or not is_unitary(b, 1e-9):
            raise ValueError("two-level block must be a 2x2 unitary")
        object.__setattr__(self, "block", b)

    @property
    def indices(self) -> tuple[int, int]:
        return self.k, self.j

    def inverse(self) -> TwoLevelOp:
        return TwoLevelOp(self.j, self.k, self.block.conj().T, self.column)

    def matrix(self, dim: int) -> np.ndarray:
        m = np.eye(dim, dtype=complex)
        apply_left(self, m)
        return m


@dataclass(frozen=True, eq=False)
class PhaseOp:
    """Diagonal fix: multiplies basis state ``index`` by the unit scalar ``phase``."""

    index: int
    phase: complex
    column: int | None = None

    def __post_init__(self):
        if abs(abs(self.phase) - 1.0) > 1e-9:
            raise ValueError("phase op needs a unit-modulus phase")
        object.__setattr__(self, "phase", complex(self.phase))

    @property
    def indices(self) -> tuple[int]:
        return (self.index,)

    def inverse(self) -> PhaseOp:
        return PhaseOp(self.index, self.phase.conjugate(), self.column)

    def matrix(self, dim: int) -> np.ndarray:
        m = np.eye(dim, dtype=complex)
        m[self.index, self.index] = self.phase
        return m


Op = TwoLevelOp | PhaseOp


def apply_left(op: Op, m: np.ndarray) -> None:
    """In-place ``m <- op @ m`` for a matrix or a vector ``m``."""
    if isinstance(op, PhaseOp):
        m[op.index] *= op.phase
        return
    b = op.block
    row_k = m[op.k].copy()
    row_j = m[op.j]
    m[op.k] = b[0, 0] * row_k + b[0, 1] * row_j
    m[op.j] = b[1, 0] * row_k + b[1, 1] * row_j


@dataclass
class DecompResult:
    ops: list[Op]
    n_qubits: int
    residual_phase: complex = 1.0
    # forward eliminations G_1..G_m in the order they were applied
    rotations: list[Op] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def product(self) -> np.ndarray:
        m = np.eye(self.dim, dtype=complex)
        for op in reversed(self.ops):
            apply_left(op, m)
        return m

    def prepared_state(self) -> np.ndarray:
        """``residual_phase * (ops product) @ e_0``."""
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        for op in reversed(self.ops):
            apply_left(op, v)
        return self.residual_phase * v


def givens_rotation(u_ji: complex, u_ki: complex) -> np.ndarray:
    """Block over (e_k, e_j) that moves the weight of ``u_ji`` onto row k.

    Applied to the column pair (u_ki, u_ji) it yields (r, 0) with
    r = sqrt(|u_ji|^2 + |u_ki|^2) real and positive.
    """
    norm = math.hypot(abs(u_ji), abs(u_ki))
    if norm <= ZERO_TOL:
        raise DecompositionError("cannot build a rotation from two null entries")
    return np.array(
        [[np.conj(u_ki), np.conj(u_ji)], [-u_ji, u_ki]], dtype=complex
    ) / norm


def _unit(z: complex) -> complex:
    return z / abs(z)


def givens_decompose(u, order: BasisOrder, tol: float = ZERO_TOL) -> DecompResult:
    """Reduce ``u`` to the identity column by column in ``order``.

    Within column ``codes[p]`` the rows at order positions N-1 .. p+1 are
    nulled, each against its predecessor in the order. When nothing needed
    nulling directly below the pivot, the pivot may carry a phase; a
    diagonal-only rotation pushes it down to the next row, so only the
    ``codes[N-1]`` diagonal can remain non-unity. A final phase op fixes it.
    """
    w = np.array(u, dtype=complex)
    dim = w.shape[0]
    n = n_qubits_for(dim)
    if w.shape != (dim, dim) or order.dim != dim:
        raise DecompositionError(f"basis order of size {order.dim} does not fit a {w.shape} matrix")
    if not is_unitary(w, 1e-6):
        raise DecompositionError("input matrix is not unitary")

    codes = order.codes
    rotations: list[Op] = []

    def rotate(j: int, k: int, col: int) -> None:
        g = TwoLevelOp(j, k, givens_rotation(w[j, col], w[k, col]), col)
        apply_left(g, w)
        rotations.append(g)

    for p, col in enumerate(codes[:-1]):
        for q in range(dim - 1, p, -1):
            j, k = codes[q], codes[q - 1]
            if abs(w[j, col]) > tol:
                rotate(j, k, col)
        if abs(w[col, col] - 1.0) > tol:
            rotate(codes[p + 1], col, col)

    last = codes[-1]
    d = w[last, last]
    if abs(d - 1.0) > tol:
        g = PhaseOp(last, _unit(d).conjugate(), last)
        apply_left(g, w)
        rotations.append(g)

    result = DecompResult([g.inverse() for g in rotations], n, 1.0, rotations)
    err = np.linalg.norm(result.product() - np.asarray(u, dtype=complex))
    if err > RECONSTRUCTION_TOL:
        raise DecompositionError(f"reconstruction error {err:.3e} exceeds {RECONSTRUCTION_TOL}")
    return result


def state_prep_decompose(s, order: BasisOrder, tol: float = ZERO_TOL) -> DecompResult:
    """Two-level ops whose product maps e_0 to ``s`` up to ``residual_phase``.

    All amplitudes except the ``codes[0]`` pivot are nulled, each against its
    predecessor in the order. The leftover pivot phase is global and is only
    recorded.
    """
    w = np.array(s, dtype=complex)
    dim = w.shape[0]
    n = n_qubits_for(dim)
    if w.ndim != 1 or order.dim != dim:
        raise DecompositionError(f"basis order of size {order.dim} does not fit a state of size {w.shape}")
    if abs(np.linalg.norm(w) - 1.0) > 1e-6:
        raise DecompositionError("state vector is not normalized")
    codes = order.codes
    if codes[0] != 0:
        raise DecompositionError("state preparation needs e_0 as the first pivot")

    rotations: list[Op] = []
    for q in range(dim - 1, 0, -1):
        j, k = codes[q], codes[q - 1]
        if abs(w[j]) > tol:
            g = TwoLevelOp(j, k, givens_rotation(w[j], w[k]), 0)
            apply_left(g, w)
            rotations.append(g)

    result = DecompResult([g.inverse() for g in rotations], n, _unit(w[0]), rotations)
    err = np.linalg.norm(result.prepared_state() - np.asarray(s, dtype=complex))
    if err > RECONSTRUCTION_TOL:
        raise DecompositionError(f"reconstruction error {err:.3e} exceeds {RECONSTRUCTION_TOL}")
    return result


SWAP_BLOCK = np.array([[0, 1], [1, 0]], dtype=complex)


def permutation_decompose(perm) -> DecompResult:
    """Basis-state transpositions whose product is the permutation matrix.

    ``perm`` is the image list (i -> perm[i]); the matrix has P[perm[i], i] = 1.
    Column i is fixed by swapping rows i and (current image of i), which
    yields at most N-1 transpositions.
    """
    images = list(getattr(perm, "images", perm))
    dim = len(images)
    n = n_qubits_for(dim)
    if sorted(images) != list(range(dim)):
        raise DecompositionError("not a permutation")

    # image[c] = row holding the 1 of column c; owner[r] = column whose 1 sits in row r
    image = images[:]
    owner = [0] * dim
    for c, r in enumerate(image):
        owner[r] = c

    rotations: list[Op] = []
    for i in range(dim):
        r = image[i]
        if r == i:
            continue
        # swap rows i and r: column i moves to row i, column owner[i] moves to row r
        c = owner[i]
        image[i], image[c] = i, r
        owner[i], owner[r] = i, c
        rotations.append(TwoLevelOp(r, i, SWAP_BLOCK, i))

    return DecompResult(list(rotations), n, 1.0, rotations)
