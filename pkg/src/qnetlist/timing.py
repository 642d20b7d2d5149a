"""Serial execution-time estimate from per-gate pulse counts.

The default durations and pulse counts are placeholders chosen to resemble a
superconducting transmon stack; override them with a key=value config.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

from qnetlist.circuit import CX, U3, Circuit
from qnetlist.errors import ParseError


@dataclass(frozen=True)
class TimingModel:
    t_fc: float = 0.0
    t_gd: float = 160.0
    t_gf: float = 160.0
    u3_pulses: tuple[int, int, int] = (2, 2, 0)
    cx_pulses: tuple[int, int, int] = (1, 2, 2)
    t_coherence: float = 100_000.0

    def __post_init__(self):
        for name in ("t_fc", "t_gd", "t_gf", "t_coherence"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("u3_pulses", "cx_pulses"):
            counts = getattr(self, name)
            if len(counts) != 3 or any(x < 0 for x in counts):
                raise ValueError(f"{name} must be three non-negative counts (fc, gd, gf)")

    def pulse_time(self, pulses: tuple[int, int, int]) -> float:
        fc, gd, gf = pulses
        return fc * self.t_fc + gd * self.t_gd + gf * self.t_gf

    @property
    def u3_time(self) -> float:
        return self.pulse_time(self.u3_pulses)

    @property
    def cx_time(self) -> float:
        return self.pulse_time(self.cx_pulses)


def parse_timing_config(text: str) -> TimingModel:
    """key=value lines; ``#`` starts a comment; pulse counts are comma separated."""
    fields = {f.name: f for f in dataclasses.fields(TimingModel)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = (p.strip() for p in line.partition("="))
        if not sep or key not in fields:
            raise ParseError(f"expected <field>=<value> with field in {sorted(fields)}", lineno)
        try:
            if key.endswith("_pulses"):
                values[key] = tuple(int(x) for x in val.replace(",", " ").split())
            else:
                values[key] = float(val)
        except ValueError:
            raise ParseError(f"bad value for {key}: {val!r}", lineno) from None
    try:
        return TimingModel(**values)
    except ValueError as e:
        raise ParseError(str(e)) from None


def estimate_time(c: Circuit, m: TimingModel = TimingModel()) -> float:
    """Total duration in ns, summing every gate serially."""
    u3 = sum(1 for g in c.gates if g.kind == U3)
    cx = sum(1 for g in c.gates if g.kind == CX)
    return u3 * m.u3_time + cx * m.cx_time


class CoherenceVerdict(NamedTuple):
    ok: bool
    ratio: float

    def __str__(self) -> str:
        if self.ok:
            return f"PASS ({self.ratio:.3f} of coherence time)"
        return f"WARN: estimated time is {self.ratio:.3f}x the coherence time"


def check_coherence(t_est: float, m: TimingModel = TimingModel()) -> CoherenceVerdict:
    if m.t_coherence <= 0:
        raise ValueError("coherence time must be positive")
    ratio = t_est / m.t_coherence
    return CoherenceVerdict(t_est <= m.t_coherence, ratio)
