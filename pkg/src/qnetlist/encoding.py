"""Basis-state orderings that fix the pivot order of the Givens elimination."""

from __future__ import annotations

import enum
from dataclasses import dataclass

MAX_QUBITS = 12


class Scheme(str, enum.Enum):
    NATURAL = "natural"
    GRAY = "gray"


def gray_code(i: int) -> int:
    if i < 0:
        raise ValueError("gray_code needs a non-negative integer")
    return i ^ (i >> 1)


@dataclass(frozen=True)
class BasisOrder:
    codes: tuple[int, ...]
    scheme: Scheme

    @property
    def dim(self) -> int:
        return len(self.codes)

    def position(self, code: int) -> int:
        return self.codes.index(code)


def basis_order(n: int, scheme: Scheme | str = Scheme.GRAY) -> BasisOrder:
    scheme = Scheme(scheme)
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count {n} outside 1..{MAX_QUBITS}")
    size = 1 << n
    if scheme is Scheme.NATURAL:
        codes = tuple(range(size))
    else:
        codes = tuple(gray_code(i) for i in range(size))
    return BasisOrder(codes, scheme)
