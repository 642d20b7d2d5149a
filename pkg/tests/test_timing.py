import pytest

from qnetlist.benchmarks import bell, qft
from qnetlist.circuit import Circuit, Gate
from qnetlist.errors import ParseError
from qnetlist.optimize import coalesce
from qnetlist.pipeline import UNITARY, compile_input
from qnetlist.timing import TimingModel, check_coherence, estimate_time, parse_timing_config


def test_empty_circuit():
    assert estimate_time(Circuit(2)) == 0


@pytest.mark.parametrize("k", [0, 1, 7])
def test_cx_linear(k):
    m = TimingModel(t_gf=160, cx_pulses=(0, 0, 2))
    c = Circuit(2, [Gate.cx(0, 1)] * k)
    assert estimate_time(c, m) == 320 * k


def test_barrier_and_measure_free():
    c = Circuit(1, [Gate.barrier(0), Gate.measure(0, 0)], n_clbits=1)
    assert estimate_time(c) == 0


def test_defaults():
    m = TimingModel()
    assert (m.t_fc, m.t_gd, m.t_gf, m.t_coherence) == (0, 160, 160, 100_000)
    assert m.u3_time == 320 and m.cx_time == 640


def test_qft3_slower_than_bell():
    models = [TimingModel(), TimingModel(t_fc=1, t_gd=1, t_gf=1, u3_pulses=(1, 0, 0), cx_pulses=(0, 0, 1))]
    t_bell = compile_input(UNITARY, bell())
    t_qft = compile_input(UNITARY, qft(3))
    for m in models:
        assert estimate_time(t_qft.circuit, m) > estimate_time(t_bell.circuit, m)


def test_additive_and_coalesce_monotone():
    a = Circuit(2, [Gate.u3(0, 1, 2, 3), Gate.cx(0, 1)])
    b = Circuit(2, [Gate.cx(0, 1), Gate.u3(0, 1, 0, 0)])
    assert estimate_time(a + b) == estimate_time(a) + estimate_time(b)
    assert estimate_time(coalesce(a + b)) <= estimate_time(a + b)


def test_check_coherence():
    m = TimingModel(t_coherence=1000)
    v = check_coherence(0, m)
    assert v.ok and v.ratio == 0
    v = check_coherence(2000, m)
    assert not v.ok and v.ratio == pytest.approx(2.0)
    assert "WARN" in str(v)
    with pytest.raises(ValueError):
        check_coherence(1, TimingModel(t_coherence=0))


def test_parse_timing_config():
    m = parse_timing_config("# pulses\nt_fc = 10\nt_gd=35.5\ncx_pulses = 1, 4, 2\n\nt_coherence=5e4\n")
    assert m.t_fc == 10 and m.t_gd == 35.5 and m.cx_pulses == (1, 4, 2) and m.t_coherence == 5e4
    assert m.t_gf == 160
    with pytest.raises(ParseError, match="line 1"):
        parse_timing_config("t_xx=1")
    with pytest.raises(ParseError, match="line 2"):
        parse_timing_config("t_fc=1\nt_gd=abc")
    with pytest.raises(ParseError):
        parse_timing_config("t_gd=-5")
