"""Map logical qubits onto a coupling graph and route non-adjacent CX gates.

A CX between distant qubits j and l is rewritten with the identity

    CX(j, l) = CX(k, l) CX(j, k) CX(k, l) CX(j, k)      (gate-list order)

where k is the first hop from j towards l; CX(k, l) is routed recursively.
The identity returns every qubit to where it started, so the layout never
changes during routing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from qnetlist.circuit import CX, Circuit, Gate
from qnetlist.errors import RoutingError

UNREACHABLE = np.iinfo(np.int64).max // 4


@dataclass(frozen=True)
class Topology:
    n_phys: int
    edges: frozenset[tuple[int, int]]
    dist: tuple[tuple[int, ...], ...] | None = None
    next_hop: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_edges(cls, n_phys: int, edges: Iterable[tuple[int, int]]) -> Topology:
        if n_phys < 1:
            raise RoutingError("topology needs at least one qubit")
        norm = set()
        for a, b in edges:
            if not (0 <= a < n_phys and 0 <= b < n_phys):
                raise RoutingError(f"edge ({a}, {b}) outside a {n_phys}-qubit machine")
            if a == b:
                raise RoutingError(f"self-loop on qubit {a}")
            norm.add((min(a, b), max(a, b)))
        return all_pairs_shortest(cls(n_phys, frozenset(norm)))

    @classmethod
    def line(cls, n: int) -> Topology:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def grid(cls, rows: int, cols: int) -> Topology:
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return cls.from_edges(rows * cols, edges)

    @classmethod
    def complete(cls, n: int) -> Topology:
        return cls.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return sorted({b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v})


def all_pairs_shortest(t: Topology) -> Topology:
    """Fill hop distances (Floyd-Warshall) and lowest-index next hops."""
    n = t.n_phys
    d = np.full((n, n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for a, b in t.edges:
        d[a, b] = d[b, a] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    if (d >= UNREACHABLE).any():
        raise RoutingError("topology is disconnected")

    adj = [t.neighbors(v) for v in range(n)]
    hop = [[v] * n for v in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b:
                hop[a][b] = next(v for v in adj[a] if d[v, b] == d[a, b] - 1)
    return Topology(
        n, t.edges,
        tuple(tuple(int(x) for x in row) for row in d),
        tuple(tuple(row) for row in hop),
    )


@dataclass(frozen=True)
class LayoutMap:
    log_to_phys: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.log_to_phys)) != len(self.log_to_phys):
            raise RoutingError(f"layout {list(self.log_to_phys)} maps two logical qubits to one physical qubit")
        if any(p < 0 for p in self.log_to_phys):
            raise RoutingError("negative physical index in layout")

    @classmethod
    def identity(cls, n: int) -> LayoutMap:
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.log_to_phys)

    def __getitem__(self, logical: int) -> int:
        return self.log_to_phys[logical]

    def check(self, n_logical: int, t: Topology) -> None:
        if len(self) != n_logical:
            raise RoutingError(f"layout covers {len(self)} qubits but the circuit has {n_logical}")
        if n_logical > t.n_phys:
            raise RoutingError(f"{n_logical} logical qubits do not fit a {t.n_phys}-qubit machine")
        bad = [p for p in self.log_to_phys if p >= t.n_phys]
        if bad:
            raise RoutingError(f"physical qubit(s) {bad} outside a {t.n_phys}-qubit machine")


def route_cnot(c_phys: int, t_phys: int, t: Topology) -> list[Gate]:
    """CX gates on topology edges whose product is CX(c_phys, t_phys).

    Distance d costs 3 * 2**(d-1) - 2 gates.
    """
    if c_phys == t_phys:
        raise RoutingError("CX control and target coincide")
    if t.dist is None:
        t = all_pairs_shortest(t)
    d = t.dist[c_phys][t_phys]
    if d == 1:
        return [Gate.cx(c_phys, t_phys)]
    k = t.next_hop[c_phys][t_phys]
    inner = route_cnot(k, t_phys, t)
    return inner + [Gate.cx(c_phys, k)] + inner + [Gate.cx(c_phys, k)]


def routed_cnot_count(distance: int) -> int:
    return 3 * 2 ** (distance - 1) - 2


def route_circuit(c: Circuit, t: Topology, m: LayoutMap | None = None) -> Circuit:
    """Relabel ``c`` onto physical qubits and expand non-adjacent CX gates."""
    if t.dist is None:
        t = all_pairs_shortest(t)
    m = m or LayoutMap.identity(c.n_qubits)
    m.check(c.n_qubits, t)
    out = Circuit(t.n_phys, n_clbits=c.n_clbits)
    cache: dict[tuple[int, int], list[Gate]] = {}
    for g in c.gates:
        g = g.relabel(m.log_to_phys)
        if g.kind == CX:
            key = g.qubits
            if key not in cache:
                cache[key] = route_cnot(*key, t)
            out.gates.extend(cache[key])
        else:
            out.gates.append(g)
    return out
