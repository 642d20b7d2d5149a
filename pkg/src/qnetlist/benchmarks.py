"""Small algorithm and gate benchmarks, each given as the operator or state
the compiler starts from plus the ideal outcome it should reach."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from qnetlist.pipeline import STATE, UNITARY

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class Benchmark:
    name: str
    kind: str
    source: np.ndarray
    # logical basis state the circuit is run from
    start: int = 0

    @property
    def n_qubits(self) -> int:
        return int(len(self.source)).bit_length() - 1

    def ideal(self) -> np.ndarray:
        if self.kind == STATE:
            return self.source
        return self.source[:, self.start]


def _hadamards(n: int) -> np.ndarray:
    return reduce(np.kron, [H] * n)


def permutation_matrix(images) -> np.ndarray:
    n = len(images)
    p = np.zeros((n, n), dtype=complex)
    p[list(images), range(n)] = 1.0
    return p


def qft(n: int) -> np.ndarray:
    dim = 1 << n
    j, k = np.meshgrid(range(dim), range(dim), indexing="ij")
    return np.exp(2j * np.pi * j * k / dim) / np.sqrt(dim)


def bernstein_vazirani(secret: str) -> np.ndarray:
    """H^n Z_s H^n with the phase oracle Z_s|x> = (-1)^{s.x}|x>; maps |0> to |s>."""
    n = len(secret)
    s = int(secret, 2)
    phases = [(-1) ** bin(s & x).count("1") for x in range(1 << n)]
    hn = _hadamards(n)
    return hn @ np.diag(phases).astype(complex) @ hn


def grover2(marked: int) -> np.ndarray:
    """One Grover iteration on two qubits, including the initial Hadamards."""
    hn = _hadamards(2)
    oracle = np.eye(4, dtype=complex)
    oracle[marked, marked] = -1
    zero = np.zeros((4, 4), dtype=complex)
    zero[0, 0] = 2
    diffusion = hn @ (zero - np.eye(4)) @ hn
    return diffusion @ oracle @ hn


def bell() -> np.ndarray:
    cx = permutation_matrix([0, 1, 3, 2])
    return cx @ np.kron(H, np.eye(2))


def ghz(n: int) -> np.ndarray:
    s = np.zeros(1 << n, dtype=complex)
    s[0] = s[-1] = 1 / np.sqrt(2)
    return s


def random_state(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def all_benchmarks() -> list[Benchmark]:
    return [
        Benchmark("Bell", UNITARY, bell()),
        Benchmark("GHZ3", STATE, ghz(3)),
        Benchmark("BV2", UNITARY, bernstein_vazirani("11")),
        Benchmark("BV4", UNITARY, bernstein_vazirani("1011")),
        Benchmark("BV6", UNITARY, bernstein_vazirani("110101")),
        Benchmark("QFT2", UNITARY, qft(2), start=1),
        Benchmark("QFT3", UNITARY, qft(3), start=5),
        Benchmark("QFT4", UNITARY, qft(4), start=11),
        Benchmark("Grover2", UNITARY, grover2(3)),
        Benchmark("CNOT", UNITARY, permutation_matrix([0, 1, 3, 2]), start=2),
        Benchmark("SWAP", UNITARY, permutation_matrix([0, 2, 1, 3]), start=1),
        Benchmark("Toffoli", UNITARY, permutation_matrix([0, 1, 2, 3, 4, 5, 7, 6]), start=6),
        Benchmark("Fredkin", UNITARY, permutation_matrix([0, 1, 2, 3, 4, 6, 5, 7]), start=5),
        Benchmark("AS2", STATE, random_state(2, 2)),
        Benchmark("AS3", STATE, random_state(3, 3)),
        Benchmark("AS4", STATE, random_state(4, 4)),
    ]


def by_name(name: str) -> Benchmark:
    for b in all_benchmarks():
        if b.name.lower() == name.lower():
            return b
    raise KeyError(name)
