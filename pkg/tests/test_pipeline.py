import numpy as np
import pytest

from conftest import cx_matrix, random_state, random_unitary
from qnetlist.benchmarks import all_benchmarks, bell, bernstein_vazirani, grover2, qft
from qnetlist.circuit import CX, MEASURE, Circuit, Gate
from qnetlist.decompose import TwoLevelOp
from qnetlist.formats import Permutation, parse_qasm
from qnetlist.layout import LayoutMap, Topology
from qnetlist.linalg import phase_dist
from qnetlist.pipeline import (
    PERMUTATION,
    QASM,
    STATE,
    UNITARY,
    CompileOptions,
    as_permutation,
    compile_input,
    embed_operator,
    embed_state,
    verify,
)
from qnetlist.sim import circuit_unitary, simulate


def test_as_permutation():
    assert as_permutation(np.eye(4)[:, [0, 2, 1, 3]]).images == (0, 2, 1, 3)
    assert as_permutation(np.diag([1, -1])) is None
    assert as_permutation(qft(2)) is None


def test_embed_state_matches_bitwise_construction(rng):
    s = random_state(4, rng)
    positions = [3, 1]
    got = embed_state(s, positions, 4)
    expected = np.zeros(16, dtype=complex)
    for x in range(4):
        b0, b1 = x >> 1 & 1, x & 1
        expected[(b0 << (3 - 3)) | (b1 << (3 - 1))] = s[x]
    assert np.allclose(got, expected)


def test_embed_operator_cx():
    # logical CX(0 -> 1) placed on physical (2, 0) is CX(2 -> 0)
    got = embed_operator(cx_matrix(0, 1, 2), [2, 0], 3)
    assert np.array_equal(got, cx_matrix(2, 0, 3))


def test_benchmark_definitions():
    assert np.allclose(bell() @ [1, 0, 0, 0], np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert np.allclose(bernstein_vazirani("101") @ np.eye(8)[0], np.eye(8)[5])
    assert np.allclose(grover2(2) @ np.eye(4)[0], np.eye(4)[2])
    assert np.allclose(qft(2), 0.5 * np.array([[1, 1, 1, 1], [1, 1j, -1, -1j], [1, -1, 1, -1], [1, -1j, -1, 1j]]))
    names = [b.name for b in all_benchmarks()]
    assert len(names) == len(set(names)) == 16


def test_compile_unitary_fully_connected(rng):
    u = random_unitary(8, rng)
    r = compile_input(UNITARY, u)
    assert r.circuit.n_qubits == 3
    assert phase_dist(circuit_unitary(r.circuit), u) <= 1e-8
    assert r.counts_after.total <= r.counts_before.total
    v = verify(r)
    assert v.reconstruction_error <= 1e-8 and v.success_rate == pytest.approx(1.0, abs=1e-9)


def test_permutation_shortcut_toggle():
    swap = np.eye(4)[:, [0, 2, 1, 3]]
    fast = compile_input(UNITARY, swap)
    slow = compile_input(UNITARY, swap, CompileOptions(detect_permutation=False))
    assert all(isinstance(op, TwoLevelOp) for op in fast.decomposition.ops)
    assert len(slow.decomposition.ops) == 4
    for r in (fast, slow):
        assert phase_dist(circuit_unitary(r.circuit), swap) <= 1e-9


def test_compile_permutation_input():
    p = Permutation((1, 2, 0, 3, 4, 5, 6, 7))
    r = compile_input(PERMUTATION, p)
    assert phase_dist(circuit_unitary(r.circuit), p.matrix()) <= 1e-9
    assert verify(r).reconstruction_error <= 1e-9


def test_compile_state_routed():
    s = np.zeros(8, dtype=complex)
    s[0] = s[7] = 2 ** -0.5
    topo = Topology.line(5)
    r = compile_input(STATE, s, CompileOptions(topology=topo, mapping=LayoutMap((4, 2, 0))))
    assert all(topo.adjacent(*g.qubits) for g in r.circuit.gates if g.kind == CX)
    assert phase_dist(simulate(r.circuit), embed_state(s, [4, 2, 0], 5)) <= 1e-9
    assert verify(r).success_rate == pytest.approx(1.0, abs=1e-9)


def test_qasm_in_skips_decomposition():
    src = parse_qasm("OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[2];\nh q[1];\nh q[1];\n")
    r = compile_input(QASM, src, CompileOptions(topology=Topology.line(3)))
    assert r.decomposition is None
    assert r.counts_after.total < r.counts_before.total
    v = verify(r)
    assert v.reconstruction_error <= 1e-9 and v.success_rate == pytest.approx(1.0)


def test_no_optimize_and_measure():
    r = compile_input(UNITARY, bell(), CompileOptions(optimize=False, measure=True,
                                                        topology=Topology.line(3), mapping=LayoutMap((2, 1))))
    assert r.counts_after[:2] == r.counts_before[:2]
    assert r.counts_after.total == r.counts_before.total + 2
    meas = [g for g in r.circuit.gates if g.kind == MEASURE]
    assert [(g.qubits, g.cbits) for g in meas] == [((2,), (0,)), ((1,), (1,))]
    assert r.circuit.n_clbits == 2
    assert verify(r).success_rate == pytest.approx(1.0, abs=1e-9)


def test_mapping_requires_topology():
    with pytest.raises(ValueError):
        compile_input(UNITARY, bell(), CompileOptions(mapping=LayoutMap((1, 0))))


def test_natural_encoding(rng):
    u = random_unitary(4, rng)
    r = compile_input(UNITARY, u, CompileOptions(encoding="natural"))
    assert phase_dist(circuit_unitary(r.circuit), u) <= 1e-8


def test_deterministic(rng):
    u = random_unitary(8, rng)
    a = compile_input(UNITARY, u, CompileOptions(topology=Topology.grid(2, 2)))
    b = compile_input(UNITARY, u.copy(), CompileOptions(topology=Topology.grid(2, 2)))
    assert a.circuit.gates == b.circuit.gates
    swap = np.eye(4)[:, [0, 2, 1, 3]]
    counts = {compile_input(UNITARY, swap, CompileOptions(detect_permutation=False)).counts_after for _ in range(3)}
    assert len(counts) == 1
