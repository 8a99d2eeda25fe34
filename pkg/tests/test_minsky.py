import json

import pytest

from machines import CORPUS, HALT, M1, M2, M3, machine
from pdmark.gadget import build_gadget
from pdmark.minsky import (Canonical, CounterMachine, Dec, Halted, IfZero, Inc,
                           ResourceLimitError, Sampled, StillRunning, compare, decode_machine,
                           encode_machine, run_direct, run_via_marking)
from pdmark.pda import FormatError, InputContractError, builtin_pda


def test_direct_runs():
    assert run_direct(M1, 10).outcome == Halted(1)
    assert run_direct(M2, 50).outcome == StillRunning(50)
    assert run_direct(M3, 10).outcome == Halted(4)


def test_direct_trace():
    assert run_direct(M3, 10).trace == (
        ("s0", (0, 0)), ("s1", (1, 0)), ("s2", (1, 0)), ("s1", (0, 0)), (HALT, (0, 0)))


def test_counters_go_negative():
    trace = run_direct(CORPUS["below"], 10).trace
    assert trace[-1] == (HALT, (-1, 0))


def test_via_marking(gadget):
    assert run_via_marking(M1, gadget, Canonical(), 10).outcome == Halted(1)
    assert run_via_marking(M3, gadget, Sampled(7), 20).outcome == Halted(4)
    assert run_via_marking(M2, gadget, Canonical(), 50).outcome == StillRunning(50)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_trace_soundness(gadget, name):
    m = CORPUS[name]
    direct = run_direct(m, 60)
    for mode in (Canonical(), Sampled(3)):
        via = run_via_marking(m, gadget, mode, 60)
        assert via.trace == direct.trace
        assert via.outcome == direct.outcome


def test_compare_reports():
    assert compare(M1, 10, [1, 2, 3]).agree
    assert compare(M3, 10, [7]).agree
    report = compare(M2, 30, [])
    assert report.agree and [m for m, _ in report.via] == ["canonical"]
    assert report.to_dict()["direct"] == {"outcome": "running", "fuel": 30}


def test_runaway_zero_tests_hit_the_ceiling(gadget):
    spin = machine(s0=Inc(2, "s1"), s1=Dec(2, "s2"), s2=IfZero(2, "s0", HALT))
    assert run_direct(spin, 200).outcome == StillRunning(200)
    with pytest.raises(ResourceLimitError):
        run_via_marking(spin, gadget, Canonical(), 200)
    assert run_via_marking(spin, gadget, Canonical(), 200, height_ceiling=400).outcome \
        == StillRunning(200)


def test_bad_inputs(gadget):
    with pytest.raises(InputContractError):
        run_direct(CounterMachine({"s0": Inc(3, "s0")}, "s0"), 5)
    with pytest.raises(InputContractError):
        run_direct(CounterMachine({"s0": Inc(1, "nowhere")}, "s0"), 5)
    with pytest.raises(InputContractError):
        run_direct(M1, 0)
    with pytest.raises(InputContractError):
        run_via_marking(M1, builtin_pda("example1"), Canonical(), 5)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_machine_json_roundtrip(name):
    m = CORPUS[name]
    text = encode_machine(m)
    assert decode_machine(text) == m and encode_machine(decode_machine(text)) == text


def test_machine_json_errors():
    with pytest.raises(FormatError, match="program.s0.op"):
        decode_machine('{"initial": "s0", "program": {"s0": {"op": "jump"}}}')
    with pytest.raises(FormatError, match="program.s0.counter"):
        decode_machine('{"initial": "s0", "program": {"s0": {"op": "inc", "counter": "1",'
                       ' "next": "s0"}}}')
    with pytest.raises(FormatError):
        decode_machine("{")
    doc = json.loads(encode_machine(M1))
    doc["states"] = ["s0"]
    with pytest.raises(FormatError, match="states"):
        decode_machine(json.dumps(doc))


def test_mode_names():
    assert str(Canonical()) == "canonical" and str(Sampled(13)) == "sampled:13"
    assert Dec(1, "x") != Inc(1, "x")
    assert build_gadget() is build_gadget()
