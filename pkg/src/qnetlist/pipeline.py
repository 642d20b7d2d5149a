"""End-to-end compilation: decompose -> synthesize -> route -> coalesce."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qnetlist.circuit import MEASURE, Circuit, Gate
from qnetlist.decompose import (
    DecompResult,
    givens_decompose,
    permutation_decompose,
    state_prep_decompose,
)
from qnetlist.encoding import Scheme, basis_order
from qnetlist.formats import Permutation
from qnetlist.layout import LayoutMap, Topology, route_circuit
from qnetlist.linalg import n_qubits_for, phase_dist
from qnetlist.optimize import GateCount, coalesce, gate_count
from qnetlist.sim import MAX_UNITARY_QUBITS, circuit_unitary, simulate, success_rate
from qnetlist.synth import synth_circuit
from qnetlist.timing import CoherenceVerdict, TimingModel, check_coherence, estimate_time

UNITARY = "unitary"
STATE = "state"
PERMUTATION = "permutation"
QASM = "qasm"


@dataclass
class CompileOptions:
    encoding: Scheme | str = Scheme.GRAY
    topology: Topology | None = None
    mapping: LayoutMap | None = None
    optimize: bool = True
    timing: TimingModel = field(default_factory=TimingModel)
    measure: bool = False
    # send 0/1 unitaries through cycle decomposition instead of Givens
    detect_permutation: bool = True


@dataclass
class CompileResult:
    kind: str
    source: object
    n_logical: int
    layout: LayoutMap
    logical: Circuit
    routed: Circuit
    circuit: Circuit
    decomposition: DecompResult | None
    counts_before: GateCount
    counts_after: GateCount
    est_time: float
    verdict: CoherenceVerdict


def as_permutation(u, tol: float = 1e-12) -> Permutation | None:
    """The permutation a 0/1 unitary encodes, or None."""
    u = np.asarray(u)
    ones = np.abs(u - 1.0) <= tol
    zeros = np.abs(u) <= tol
    if not np.all(ones | zeros):
        return None
    if not (np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1)):
        return None
    return Permutation(tuple(int(r) for r in np.argmax(ones, axis=0)))


def decompose_input(kind: str, source, options: CompileOptions) -> DecompResult:
    if kind == PERMUTATION:
        return permutation_decompose(source)
    n = n_qubits_for(len(source))
    order = basis_order(n, options.encoding)
    if kind == STATE:
        return state_prep_decompose(source, order)
    if options.detect_permutation:
        perm = as_permutation(source)
        if perm is not None:
            return permutation_decompose(perm)
    return givens_decompose(source, order)


def _finish(kind, source, logical: Circuit, d: DecompResult | None, options: CompileOptions) -> CompileResult:
    n = logical.n_qubits
    layout = options.mapping or LayoutMap.identity(n)
    if options.topology is not None:
        routed = route_circuit(logical, options.topology, layout)
    elif options.mapping is not None:
        raise ValueError("a mapping needs a topology")
    else:
        routed = logical
    final = coalesce(routed) if options.optimize else routed.copy()
    if options.measure:
        final = Circuit(final.n_qubits, final.gates, max(final.n_clbits, n))
        final.extend(Gate.measure(layout[i], i) for i in range(n))
    t = estimate_time(final, options.timing)
    return CompileResult(
        kind, source, n, layout, logical, routed, final, d,
        gate_count(routed), gate_count(final), t, check_coherence(t, options.timing),
    )


def compile_input(kind: str, source, options: CompileOptions | None = None) -> CompileResult:
    options = options or CompileOptions()
    if kind == QASM:
        return _finish(kind, source, source, None, options)
    d = decompose_input(kind, source, options)
    return _finish(kind, source, synth_circuit(d), d, options)


def _without_measure(c: Circuit) -> Circuit:
    return Circuit(c.n_qubits, [g for g in c.gates if g.kind != MEASURE], c.n_clbits)


def _axis_order(positions, n_phys: int) -> list[int]:
    """order[p] = axis of the (logical..., unused...) tensor that lands on physical qubit p."""
    unused = [p for p in range(n_phys) if p not in set(positions)]
    current = list(positions) + unused
    where = {p: i for i, p in enumerate(current)}
    return [where[p] for p in range(n_phys)]


def embed_state(s, positions, n_phys: int) -> np.ndarray:
    """Logical state on ``positions`` with |0> on every other physical qubit."""
    s = np.asarray(s, dtype=complex)
    n = len(positions)
    full = np.zeros(1 << (n_phys - n), dtype=complex)
    full[0] = 1.0
    t = np.kron(s, full).reshape((2,) * n_phys)
    return t.transpose(_axis_order(positions, n_phys)).reshape(-1)


def embed_operator(u, positions, n_phys: int) -> np.ndarray:
    """Logical operator on ``positions`` tensored with identity elsewhere."""
    u = np.asarray(u, dtype=complex)
    n = len(positions)
    t = np.kron(u, np.eye(1 << (n_phys - n))).reshape((2,) * (2 * n_phys))
    order = _axis_order(positions, n_phys)
    t = t.transpose(order + [n_phys + o for o in order])
    return t.reshape(1 << n_phys, 1 << n_phys)


@dataclass
class Verification:
    reconstruction_error: float
    success_rate: float
    start: int = 0


def verify(result: CompileResult, start: int = 0) -> Verification:
    """Compare the compiled circuit against its source with the statevector oracle.

    ``start`` is a logical basis index; the reported success rate is the Born
    probability of the ideal output state after running from it.
    """
    c = _without_measure(result.circuit)
    n_phys = c.n_qubits
    positions = list(result.layout.log_to_phys)
    dim = 1 << result.n_logical
    e = np.zeros(dim, dtype=complex)
    e[start] = 1.0

    if result.kind == STATE:
        target = embed_state(result.source, positions, n_phys)
        final = simulate(c)
        return Verification(phase_dist(final, target), success_rate(final, target), 0)

    if result.kind == QASM:
        logical = circuit_unitary(_without_measure(result.source)) if result.n_logical <= MAX_UNITARY_QUBITS else None
        ideal = simulate(_without_measure(result.source), e)
    else:
        logical = result.source.matrix() if result.kind == PERMUTATION else np.asarray(result.source)
        ideal = logical @ e
    final = simulate(c, embed_state(e, positions, n_phys))
    rate = success_rate(final, embed_state(ideal, positions, n_phys))
    if logical is not None and n_phys <= MAX_UNITARY_QUBITS:
        err = phase_dist(circuit_unitary(c), embed_operator(logical, positions, n_phys))
    else:
        err = phase_dist(final, embed_state(ideal, positions, n_phys))
    return Verification(err, rate, start)
