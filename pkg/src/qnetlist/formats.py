"""Readers for the compiler's input files and the OpenQASM-2.0 subset it
reads and writes.

Matrix and state files hold whitespace-separated tokens, each either a real
literal (``0.5``) or a bracketed complex pair (``(0.0, -0.5)``). Matrices are
row-major, and qubit 0 is the most significant bit of the basis index.
"""

from __future__ import annotations

import ast
import math
import operator
import re
from dataclasses import dataclass

import numpy as np

from qnetlist.circuit import BARRIER, CX, MEASURE, U3, Circuit, Gate
from qnetlist.errors import ParseError, RoutingError
from qnetlist.layout import LayoutMap, Topology
from qnetlist.linalg import is_unitary

INPUT_TOL = 1e-6

_TOKEN = re.compile(r"\s*(?:\(([^()]*)\)|([^\s()]+))")


def _real(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise ParseError(f"malformed number {text!r}") from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite number {text!r}")
    return x


def parse_complex_tokens(text: str) -> list[complex]:
    values = []
    pos, end = 0, len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"malformed token near {text[pos:pos + 20].strip()!r}")
        pair, real = m.groups()
        if pair is not None:
            parts = pair.split(",")
            if len(parts) != 2:
                raise ParseError(f"malformed complex token '({pair})'")
            values.append(complex(_real(parts[0].strip()), _real(parts[1].strip())))
        else:
            values.append(complex(_real(real), 0.0))
        pos = m.end()
    return values


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def parse_unitary(text: str) -> np.ndarray:
    values = parse_complex_tokens(text)
    d = math.isqrt(len(values))
    if not values or d * d != len(values):
        raise ParseError(f"{len(values)} entries do not form a square matrix")
    if not _is_pow2(d):
        raise ParseError(f"matrix dimension {d} is not a power of 2")
    u = np.array(values, dtype=complex).reshape(d, d)
    if not is_unitary(u, INPUT_TOL):
        raise ParseError("matrix is not unitary")
    return u


def parse_state(text: str) -> np.ndarray:
    values = parse_complex_tokens(text)
    if len(values) < 2 or not _is_pow2(len(values)):
        raise ParseError(f"state length {len(values)} is not a power of 2 (>= 2)")
    s = np.array(values, dtype=complex)
    norm = np.linalg.norm(s)
    if abs(norm - 1.0) > INPUT_TOL:
        raise ParseError(f"state has norm {norm:.9g}, expected 1")
    return s


@dataclass(frozen=True)
class Permutation:
    """Cauchy single-line notation: basis state i maps to ``images[i]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            seen, dup = set(), None
            for x in self.images:
                if x in seen:
                    dup = x
                seen.add(x)
            if dup is not None:
                raise ParseError(f"image {dup} repeated")
            raise ParseError(f"images must cover 0..{n - 1}")
        if not _is_pow2(n) or n < 2:
            raise ParseError(f"permutation length {n} is not a power of 2 (>= 2)")

    def __len__(self) -> int:
        return len(self.images)

    def matrix(self) -> np.ndarray:
        n = len(self.images)
        p = np.zeros((n, n), dtype=complex)
        p[list(self.images), range(n)] = 1.0
        return p


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"{what} must contain integers only") from None


def parse_permutation(text: str) -> Permutation:
    return Permutation(tuple(_ints(text, "permutation")))


def parse_topology(text: str) -> Topology:
    """First non-empty line: qubit count; each further line: ``a b`` edge."""
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty topology")
    first, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError("first line must be the qubit count", first) from None
    edges = []
    for i, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError("edge lines must be 'a b'", i)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", i) from None
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", i)
        edges.append((a, b))
    try:
        return Topology.from_edges(n, edges)
    except RoutingError as e:
        raise ParseError(str(e)) from None


def parse_mapping(text: str) -> LayoutMap:
    phys = _ints(text, "mapping")
    if not phys:
        raise ParseError("empty mapping")
    try:
        return LayoutMap(tuple(phys))
    except RoutingError as e:
        raise ParseError(str(e)) from None


# --- OpenQASM 2.0 -----------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp,
          "ln": math.log, "sqrt": math.sqrt}


def _eval_angle(expr: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(expr)

    try:
        value = ev(ast.parse(expr.strip().replace("^", "**"), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError):
        raise ValueError(f"bad angle expression {expr!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"non-finite angle {expr!r}")
    return value


_HALF_PI = math.pi / 2
# name -> (parameter count, builder of U3 params from parsed params)
_SINGLE = {
    "u3": (3, lambda p: (p[0], p[1], p[2])),
    "u": (3, lambda p: (p[0], p[1], p[2])),
    "u2": (2, lambda p: (_HALF_PI, p[0], p[1])),
    "u1": (1, lambda p: (0.0, 0.0, p[0])),
    "x": (0, lambda p: (math.pi, 0.0, math.pi)),
    "h": (0, lambda p: (_HALF_PI, 0.0, math.pi)),
}

_STMT = re.compile(r"^([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*(.*)$", re.S)
_ARG = re.compile(r"^([A-Za-z_]\w*)\s*(?:\[\s*(\d+)\s*\])?$")
_REG = re.compile(r"^(qreg|creg)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")


def _statements(text: str):
    """Yield (line number, statement) pairs; comments removed."""
    body = re.sub(r"//[^\n]*", "", text)
    line, buf, start = 1, [], None
    for ch in body:
        if start is None and not ch.isspace():
            start = line
        if ch == ";":
            yield start, "".join(buf).strip()
            buf, start = [], None
        else:
            buf.append(ch)
        if ch == "\n":
            line += 1
    rest = "".join(buf).strip()
    if rest:
        raise ParseError("missing ';' at end of statement", start)


def parse_qasm(text: str) -> Circuit:
    qreg = creg = None
    gates: list[tuple[int, str, list[float], list[tuple[str, int | None]]]] = []
    saw_header = False

    for lineno, stmt in _statements(text):
        if not stmt:
            continue
        if stmt.startswith("OPENQASM"):
            if stmt.split()[1:] != ["2.0"]:
                raise ParseError("only OPENQASM 2.0 is supported", lineno)
            saw_header = True
            continue
        if stmt.startswith("include"):
            continue
        reg = _REG.match(stmt)
        if reg:
            kind, name, size = reg.group(1), reg.group(2), int(reg.group(3))
            if size < 1:
                raise ParseError(f"{kind} {name} has no bits", lineno)
            if kind == "qreg":
                if qreg is not None:
                    raise ParseError("only one qreg is supported", lineno)
                qreg = (name, size)
            else:
                if creg is not None:
                    raise ParseError("only one creg is supported", lineno)
                creg = (name, size)
            continue
        if stmt.startswith("measure"):
            src, arrow, dst = stmt[len("measure"):].partition("->")
            if not arrow:
                raise ParseError("measure needs '->'", lineno)
            gates.append((lineno, "measure", [], [_arg(src, lineno), _arg(dst, lineno)]))
            continue
        m = _STMT.match(stmt)
        if not m:
            raise ParseError(f"cannot parse statement {stmt!r}", lineno)
        name, params, args = m.group(1), m.group(2), m.group(3)
        if name in ("gate", "opaque", "if", "reset"):
            raise ParseError(f"'{name}' is not supported", lineno)
        if name not in _SINGLE and name not in ("cx", "CX", "barrier"):
            raise ParseError(f"unsupported gate '{name}'", lineno)
        try:
            values = [_eval_angle(p) for p in params.split(",")] if params is not None and params.strip() else []
        except ValueError as e:
            raise ParseError(str(e), lineno) from None
        arglist = [_arg(a, lineno) for a in args.split(",")] if args.strip() else []
        gates.append((lineno, name, values, arglist))

    if not saw_header:
        raise ParseError("missing 'OPENQASM 2.0;' header", 1)
    if qreg is None:
        raise ParseError("no qreg declared", 1)
    qname, nq = qreg
    cname, nc = creg if creg else (None, 0)

    def qubits(arg, lineno):
        reg, idx = arg
        if reg != qname:
            raise ParseError(f"unknown quantum register '{reg}'", lineno)
        if idx is None:
            return list(range(nq))
        if idx >= nq:
            raise ParseError(f"qubit index {idx} out of range", lineno)
        return [idx]

    def clbits(arg, lineno):
        reg, idx = arg
        if reg != cname:
            raise ParseError(f"unknown classical register '{reg}'", lineno)
        if idx is None:
            return list(range(nc))
        if idx >= nc:
            raise ParseError(f"classical bit index {idx} out of range", lineno)
        return [idx]

    circuit = Circuit(nq, n_clbits=nc)
    for lineno, name, values, args in gates:
        try:
            if name == "measure":
                qs, cs = qubits(args[0], lineno), clbits(args[1], lineno)
                if len(qs) != len(cs):
                    raise ParseError("measure register sizes differ", lineno)
                circuit.extend(Gate.measure(q, c) for q, c in zip(qs, cs))
            elif name == "barrier":
                if not args:
                    raise ParseError("barrier needs operands", lineno)
                qs = [q for a in args for q in qubits(a, lineno)]
                circuit.append(Gate.barrier(*qs))
            elif name in ("cx", "CX"):
                if len(args) != 2 or values:
                    raise ParseError("cx takes two qubit operands and no parameters", lineno)
                cs, ts = qubits(args[0], lineno), qubits(args[1], lineno)
                if len(cs) == 1:
                    cs = cs * len(ts)
                if len(ts) == 1:
                    ts = ts * len(cs)
                if len(cs) != len(ts):
                    raise ParseError("cx register sizes differ", lineno)
                circuit.extend(Gate.cx(c, t) for c, t in zip(cs, ts))
            else:
                nparams, build = _SINGLE[name]
                if len(values) != nparams:
                    raise ParseError(f"{name} takes {nparams} parameter(s), got {len(values)}", lineno)
                if len(args) != 1:
                    raise ParseError(f"{name} takes one qubit operand", lineno)
                angles = build(values)
                circuit.extend(Gate.u3(q, *angles) for q in qubits(args[0], lineno))
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), lineno) from None
    return circuit


def _arg(text: str, lineno: int) -> tuple[str, int | None]:
    m = _ARG.match(text.strip())
    if not m:
        raise ParseError(f"bad operand {text.strip()!r}", lineno)
    return m.group(1), None if m.group(2) is None else int(m.group(2))


def _angle(x: float) -> str:
    return format(x, ".17g")


def emit_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    if c.n_clbits:
        lines.append(f"creg c[{c.n_clbits}];")
    for g in c.gates:
        if g.kind == U3:
            params = ",".join(_angle(p) for p in g.params)
            lines.append(f"u3({params}) q[{g.qubits[0]}];")
        elif g.kind == CX:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        elif g.kind == MEASURE:
            lines.append(f"measure q[{g.qubits[0]}] -> c[{g.cbits[0]}];")
        elif g.kind == BARRIER:
            lines.append("barrier " + ",".join(f"q[{q}]" for q in g.qubits) + ";")
    return "\n".join(lines) + "\n"
