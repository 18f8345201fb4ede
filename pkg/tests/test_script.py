import math

import pytest
from hypothesis import given, settings, strategies as st

from agrisim.script import (MissionScript, ScriptError, ScriptEvent,
                            digest_lines, format_byte, format_event,
                            load_script, parse_directive, parse_script,
                            quantize_tick, script_from_events)

GOOD = """\
# drive forward for a second, then stop
0.0  SEND F
0.5  BOOM pitch -30.0
0.5  NOZZLE 5
0.7  SOLAR on
1.0  SEND S
2.0  END
"""


def test_parse_round_trip():
    s = parse_script(GOOD)
    kinds = [e.kind for e in s.events]
    assert kinds == ["SEND", "BOOM", "NOZZLE", "SOLAR", "SEND", "END"]
    assert s.events[0].args == (ord("F"),)
    assert s.events[1].args == ("pitch", -30.0)
    assert s.events[2].args == (5,)
    assert s.events[3].args == (True,)
    assert s.end_time == 2.0


def test_quantize_nearest_ties_earlier():
    dt = 0.05
    assert quantize_tick(0.0, dt) == 0
    assert quantize_tick(0.10, dt) == 2
    assert quantize_tick(0.12, dt) == 2   # 2.4 ticks: nearest is 2
    assert quantize_tick(0.13, dt) == 3   # 2.6 ticks: nearest is 3
    assert quantize_tick(0.125, dt) == 2  # exact half rounds earlier
    assert quantize_tick(0.075, dt) == 1  # 1.5 ticks -> 1
    with pytest.raises(ValueError):
        quantize_tick(1.0, 0.0)


def test_canonical_lines_are_tick_aligned():
    s = parse_script("0.12 SEND F\n0.2 END\n")
    lines = s.canonical_lines(0.05)
    assert lines == ["0.1 SEND F", "0.2 END"]


def test_digest_is_stable_and_sensitive():
    s = parse_script(GOOD)
    assert s.digest(0.05) == s.digest(0.05)
    s2 = parse_script(GOOD.replace("SEND F", "SEND B"))
    assert s.digest(0.05) != s2.digest(0.05)
    # equal after quantization, equal digest
    a = parse_script("0.101 SEND F\n1.0 END\n")
    b = parse_script("0.099 SEND F\n1.0 END\n")
    assert a.digest(0.05) == b.digest(0.05)


def test_format_byte():
    assert format_byte(ord("F")) == "F"
    assert format_byte(0x0A) == "0x0A"
    assert format_byte(0x20) == "0x20"  # space isn't printable in a script
    assert format_byte(0xFF) == "0xFF"


def test_format_event_solar_and_floats():
    assert format_event(1.0, "SOLAR", (True,)) == "1.0 SOLAR on"
    assert format_event(1.0, "SOLAR", (False,)) == "1.0 SOLAR off"
    assert format_event(0.30000000000000004, "END", ()) == "0.30000000000000004 END"


def test_hex_byte_parses():
    s = parse_script("0 SEND 0x46\n1 END\n")
    assert s.events[0].args == (ord("F"),)


def test_errors_carry_source_and_line():
    with pytest.raises(ScriptError, match=r"mission\.txt:2"):
        parse_script("0 SEND F\n0 SEND toolong\n1 END\n", source="mission.txt")


def test_rejects_time_going_backwards():
    with pytest.raises(ScriptError, match="backwards"):
        parse_script("1.0 SEND F\n0.5 SEND S\n2 END\n")


def test_rejects_missing_end():
    with pytest.raises(ScriptError, match="missing END"):
        parse_script("0 SEND F\n")


def test_rejects_event_after_end():
    with pytest.raises(ScriptError, match="after END"):
        parse_script("0 SEND F\n1 END\n2 SEND S\n")


def test_rejects_bad_values():
    for bad in ("0 NOZZLE 8\n1 END\n", "0 NOZZLE x\n1 END\n",
                "0 SPEED 300\n1 END\n", "0 BOOM sideways 1\n1 END\n",
                "0 SOLAR maybe\n1 END\n", "0 SEND\n1 END\n",
                "-1 SEND F\n1 END\n", "nan END\n"):
        with pytest.raises(ScriptError):
            parse_script(bad)


def test_event_validation():
    with pytest.raises(ValueError):
        ScriptEvent(0.0, "JUMP")
    with pytest.raises(ValueError):
        ScriptEvent(-1.0, "END")
    with pytest.raises(ValueError):
        ScriptEvent(math.inf, "END")


def test_parse_directive():
    e = parse_directive("BOOM pitch -40")
    assert (e.kind, e.args) == ("BOOM", ("pitch", -40.0))
    e = parse_directive("SOLAR off")
    assert e.args == (False,)
    with pytest.raises(ScriptError):
        parse_directive("SEND F")  # bytes belong on the control channel
    with pytest.raises(ScriptError):
        parse_directive("END")
    with pytest.raises(ScriptError):
        parse_directive("")


def test_script_from_events_appends_end():
    s = script_from_events([ScriptEvent(0.0, "SEND", (ord("F"),))],
                           end_time=3.0)
    assert s.events[-1].kind == "END"
    assert s.events[-1].t == 3.0
    # an END already present is kept as-is
    s2 = script_from_events(s.events)
    assert s2 == s


def test_load_script(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(GOOD)
    s = load_script(str(p))
    assert s.end_time == 2.0
    bad = tmp_path / "bad.txt"
    bad.write_text("0 SEND F\n")
    with pytest.raises(ScriptError, match="bad.txt"):
        load_script(str(bad))


def test_digest_lines_differ_on_content():
    assert digest_lines(["a", "b"]) != digest_lines(["a", "c"])
    assert digest_lines([]) != digest_lines([""])


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 1000), st.sampled_from([0.01, 0.05, 0.1, 0.5]))
def test_quantize_within_half_tick(t, dt):
    k = quantize_tick(t, dt)
    assert abs(k * dt - t) <= dt / 2 + 1e-9
    assert k >= 0
