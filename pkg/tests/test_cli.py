import subprocess
import sys

import numpy as np
import pytest

from qnetlist.circuit import CX
from qnetlist.cli import main
from qnetlist.formats import parse_qasm
from qnetlist.linalg import phase_dist
from qnetlist.sim import circuit_unitary, simulate

SWAP_TEXT = "1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n"
GHZ_TEXT = "0.7071067811865476 0 0 0 0 0 0 0.7071067811865476\n"
LINE5 = "5\n0 1\n1 2\n2 3\n3 4\n"
BELL_QASM = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n'


@pytest.fixture
def files(tmp_path):
    for name, text in {"swap.u": SWAP_TEXT, "ghz3.vec": GHZ_TEXT, "line5.top": LINE5,
                       "bell.qasm": BELL_QASM, "perm.p": "1 2 0 3\n", "map.txt": "4 3\n",
                       "timing.cfg": "t_coherence=10\n"}.items():
        (tmp_path / name).write_text(text)
    return tmp_path


def test_unitary_verify(files, capsys):
    out = files / "swap.qasm"
    assert main(["--unitary", str(files / "swap.u"), "--out", str(out), "--verify"]) == 0
    report = capsys.readouterr().out
    err = float(report.split("reconstruction error:")[1].split()[0])
    assert err <= 1e-8
    assert "success rate: 1.0000" in report
    c = parse_qasm(out.read_text())
    assert phase_dist(circuit_unitary(c), np.eye(4)[[0, 2, 1, 3]]) <= 1e-9


def test_state_routed(files, capsys):
    out = files / "ghz.qasm"
    rc = main(["--state", str(files / "ghz3.vec"), "--topology", str(files / "line5.top"),
               "--mapping", "0 1 2", "--out", str(out)])
    assert rc == 0
    c = parse_qasm(out.read_text())
    assert c.n_qubits == 5
    edges = {(i, i + 1) for i in range(4)}
    assert all(tuple(sorted(g.qubits)) in edges for g in c.gates if g.kind == CX)
    s = simulate(c)
    assert abs(s[0]) ** 2 == pytest.approx(0.5) and abs(s[0b11100]) ** 2 == pytest.approx(0.5)


def test_conflicting_inputs(files, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--qasm-in", str(files / "bell.qasm"), "--unitary", str(files / "swap.u")])
    assert exc.value.code != 0
    assert "not allowed" in capsys.readouterr().err


def test_no_input(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code != 0


def test_mapping_without_topology(files, capsys):
    assert main(["--qasm-in", str(files / "bell.qasm"), "--mapping", "0 1"]) == 1
    assert "needs --topology" in capsys.readouterr().err


def test_missing_file(files, capsys):
    assert main(["--unitary", str(files / "nope.u")]) == 1
    assert "error" in capsys.readouterr().err


def test_bad_input_diagnostic(files, capsys):
    (files / "bad.u").write_text("1 1 0 1")
    assert main(["--unitary", str(files / "bad.u")]) == 1
    assert "not unitary" in capsys.readouterr().err


def test_stdout_qasm_and_report_on_stderr(files, capsys):
    assert main(["--qasm-in", str(files / "bell.qasm"), "--measure", "--topology", str(files / "line5.top"),
                 "--mapping", str(files / "map.txt"), "--verify", "--timing-config", str(files / "timing.cfg")]) == 0
    captured = capsys.readouterr()
    c = parse_qasm(captured.out)
    assert c.n_qubits == 5 and c.n_clbits == 2
    assert "WARN" in captured.err and "success rate: 1.0000" in captured.err


def test_perm_and_flags(files, capsys):
    args = ["--perm", str(files / "perm.p"), "--encoding", "natural", "--no-optimize", "--verify"]
    assert main(args) == 0
    first = capsys.readouterr()
    assert main(args) == 0
    second = capsys.readouterr()
    assert first.out == second.out
    assert "gates before optimization" in first.err


def test_deterministic_output_file(files):
    a, b = files / "a.qasm", files / "b.qasm"
    for out in (a, b):
        assert main(["--unitary", str(files / "swap.u"), "--no-permutation-shortcut", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "qnetlist", "--qasm-in", str(files / "bell.qasm")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("OPENQASM 2.0;")
