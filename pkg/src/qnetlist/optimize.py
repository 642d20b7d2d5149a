"""Peephole coalescing of adjacent gates."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from qnetlist.circuit import CX, U3, Circuit, Gate
from qnetlist.linalg import phase_dist, u3_matrix
from qnetlist.synth import zyz

IDENTITY_TOL = 1e-10
_I2 = np.eye(2)


class GateCount(NamedTuple):
    u3: int
    cx: int
    total: int


def gate_count(c: Circuit) -> GateCount:
    u3 = sum(1 for g in c.gates if g.kind == U3)
    cx = sum(1 for g in c.gates if g.kind == CX)
    return GateCount(u3, cx, len(c.gates))


def _is_identity(g: Gate) -> bool:
    return phase_dist(u3_matrix(*g.params), _I2) <= IDENTITY_TOL


def _pass(gates: list[Gate], n: int) -> tuple[list[Gate], bool]:
    # out holds surviving gates (None = removed); stacks[q] lists indices into
    # out of the live gates touching q, so the top is the last gate on q.
    out: list[Gate | None] = []
    stacks: list[list[int]] = [[] for _ in range(n)]
    changed = False

    def drop(idx: int) -> None:
        for q in out[idx].qubits:
            assert stacks[q][-1] == idx
            stacks[q].pop()
        out[idx] = None

    for g in gates:
        if g.kind == U3:
            q = g.qubits[0]
            top = stacks[q][-1] if stacks[q] else None
            if top is not None and out[top].kind == U3:
                m = u3_matrix(*g.params) @ u3_matrix(*out[top].params)
                merged = Gate.u3(q, *zyz(m).u3_params())
                changed = True
                drop(top)
                g = merged
            if _is_identity(g):
                changed = True
                continue
        elif g.kind == CX:
            a, b = g.qubits
            top = stacks[a][-1] if stacks[a] else None
            if top is not None and stacks[b] and stacks[b][-1] == top and out[top] == g:
                drop(top)
                changed = True
                continue
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)
    return [g for g in out if g is not None], changed


def coalesce(c: Circuit) -> Circuit:
    """Merge adjacent u3 pairs, cancel adjacent identical CX pairs and drop
    identity u3 gates, repeating until nothing changes.

    Barriers and measurements sit on their qubits' stacks like any other gate,
    so nothing merges across them.
    """
    gates = list(c.gates)
    while True:
        gates, changed = _pass(gates, c.n_qubits)
        if not changed:
            return Circuit(c.n_qubits, gates, c.n_clbits)
