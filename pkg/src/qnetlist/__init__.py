"""Compile unitaries, state vectors, permutations or OpenQASM circuits into
routed, peephole-optimized OpenQASM-2.0 netlists."""

from qnetlist.circuit import Circuit, Gate
from qnetlist.errors import (
    CompileError,
    DecompositionError,
    ParseError,
    RoutingError,
)

__all__ = [
    "Circuit",
    "CompileError",
    "DecompositionError",
    "Gate",
    "ParseError",
    "RoutingError",
]

__version__ = "0.1.0"
