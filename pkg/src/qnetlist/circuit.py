"""Gate and circuit containers shared by every compiler stage.

The internal gate alphabet is {u3, cx, measure, barrier}. Gate order in a
circuit is execution order: ``gates[0]`` acts first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

U3 = "u3"
CX = "cx"
MEASURE = "measure"
BARRIER = "barrier"

KINDS = (U3, CX, MEASURE, BARRIER)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    cbits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        arity = {U3: 1, CX: 2, MEASURE: 1}.get(self.kind)
        if arity is not None and len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {len(self.qubits)}")
        if self.kind == BARRIER and not self.qubits:
            raise ValueError("barrier needs at least one qubit")
        if self.kind == U3:
            if len(self.params) != 3 or not all(math.isfinite(p) for p in self.params):
                raise ValueError(f"u3 needs three finite angles, got {self.params}")
        elif self.params:
            raise ValueError(f"{self.kind} takes no parameters")
        if self.kind == MEASURE and len(self.cbits) != 1:
            raise ValueError("measure needs exactly one classical bit")
        if self.kind != MEASURE and self.cbits:
            raise ValueError(f"{self.kind} takes no classical bits")

    @classmethod
    def u3(cls, qubit: int, theta: float, phi: float, lam: float) -> Gate:
        return cls(U3, (qubit,), (float(theta), float(phi), float(lam)))

    @classmethod
    def cx(cls, control: int, target: int) -> Gate:
        return cls(CX, (control, target))

    @classmethod
    def measure(cls, qubit: int, cbit: int) -> Gate:
        return cls(MEASURE, (qubit,), cbits=(cbit,))

    @classmethod
    def barrier(cls, *qubits: int) -> Gate:
        return cls(BARRIER, tuple(qubits))

    def relabel(self, mapping) -> Gate:
        """Return the same gate acting on ``mapping[q]`` for each qubit ``q``."""
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.params, self.cbits)


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    n_clbits: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        self.gates = list(self.gates)
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        if any(q < 0 or q >= self.n_qubits for q in g.qubits):
            raise ValueError(f"{g.kind} on {g.qubits} outside a {self.n_qubits}-qubit register")
        if any(c < 0 or c >= self.n_clbits for c in g.cbits):
            raise ValueError(f"classical bit {g.cbits} outside a {self.n_clbits}-bit register")

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.gates + other.gates, max(self.n_clbits, other.n_clbits))

    def copy(self) -> Circuit:
        return Circuit(self.n_qubits, list(self.gates), self.n_clbits)
