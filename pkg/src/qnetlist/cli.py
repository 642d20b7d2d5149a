"""Command-line driver: read one input, compile, write OpenQASM, report."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from qnetlist.errors import CompileError
from qnetlist.formats import (
    emit_qasm,
    parse_mapping,
    parse_permutation,
    parse_qasm,
    parse_state,
    parse_topology,
    parse_unitary,
)
from qnetlist.pipeline import (
    PERMUTATION,
    QASM,
    STATE,
    UNITARY,
    CompileOptions,
    compile_input,
    verify,
)
from qnetlist.timing import TimingModel, parse_timing_config

_READERS = {
    UNITARY: parse_unitary,
    STATE: parse_state,
    PERMUTATION: parse_permutation,
    QASM: parse_qasm,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qnetlist",
        description="Compile a unitary, state vector, permutation or OpenQASM-2.0 "
        "circuit into a routed, optimized OpenQASM-2.0 netlist.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--unitary", metavar="FILE", help="row-major unitary matrix")
    src.add_argument("--state", metavar="FILE", help="target state vector prepared from |0...0>")
    src.add_argument("--perm", metavar="FILE", help="permutation in single-line notation")
    src.add_argument("--qasm-in", metavar="FILE", help="existing OpenQASM-2.0 circuit (skips decomposition)")
    p.add_argument("--topology", metavar="FILE", help="coupling graph; omit for full connectivity")
    p.add_argument("--mapping", metavar="MAP", help='logical->physical map, inline ("2 0 1") or a file')
    p.add_argument("--encoding", choices=["gray", "natural"], default="gray")
    p.add_argument("--no-optimize", action="store_true", help="skip gate coalescing")
    p.add_argument("--no-permutation-shortcut", action="store_true",
                   help="decompose 0/1 unitaries with Givens rotations too")
    p.add_argument("--timing-config", metavar="FILE", help="key=value timing model overrides")
    p.add_argument("--verify", action="store_true", help="check the result with the statevector oracle")
    p.add_argument("--measure", action="store_true", help="append a measurement of every logical qubit")
    p.add_argument("--out", metavar="FILE", help="output QASM file (default: stdout)")
    return p


def _read(path: str) -> str:
    return Path(path).read_text()


def run(args: argparse.Namespace) -> int:
    for kind, attr in ((UNITARY, "unitary"), (STATE, "state"), (PERMUTATION, "perm"), (QASM, "qasm_in")):
        path = getattr(args, attr)
        if path is not None:
            break
    source = _READERS[kind](_read(path))

    topology = parse_topology(_read(args.topology)) if args.topology else None
    mapping = None
    if args.mapping is not None:
        if topology is None:
            raise CompileError("--mapping needs --topology")
        text = _read(args.mapping) if os.path.isfile(args.mapping) else args.mapping
        mapping = parse_mapping(text)
    timing = parse_timing_config(_read(args.timing_config)) if args.timing_config else TimingModel()

    options = CompileOptions(
        encoding=args.encoding,
        topology=topology,
        mapping=mapping,
        optimize=not args.no_optimize,
        timing=timing,
        measure=args.measure,
        detect_permutation=not args.no_permutation_shortcut,
    )
    try:
        result = compile_input(kind, source, options)
    except ValueError as e:
        raise CompileError(str(e)) from None

    qasm = emit_qasm(result.circuit)
    if args.out:
        Path(args.out).write_text(qasm)
        report = sys.stdout
    else:
        sys.stdout.write(qasm)
        report = sys.stderr

    before, after = result.counts_before, result.counts_after
    lines = [
        f"input: {kind} ({result.n_logical} logical qubit(s))",
        f"physical qubits: {result.circuit.n_qubits}",
        f"gates before optimization: {before.total} (u3={before.u3}, cx={before.cx})",
        f"gates after optimization: {after.total} (u3={after.u3}, cx={after.cx})",
        f"estimated execution time: {result.est_time:.1f} ns",
        f"coherence: {result.verdict}",
    ]
    if args.verify:
        v = verify(result)
        lines.append(f"reconstruction error: {v.reconstruction_error:.3e}")
        lines.append(f"success rate: {v.success_rate:.12f}")
    print("\n".join(lines), file=report)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (CompileError, OSError) as e:
        print(f"qnetlist: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
