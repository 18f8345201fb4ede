import pytest

from agrisim.kinematics import Direction
from agrisim.protocol import (FLAG_BYTES, MOTION_BYTES, STOP_BYTE,
                              ControllerModeError, ControllerState, Mode,
                              Motion, classify_byte, drive_for, idle_hold,
                              set_speed, step_controller)


def feed(state, text):
    for ch in text:
        state, drive = step_controller(state, ord(ch))
    return state, drive


def test_byte_tables():
    assert {chr(b) for b in MOTION_BYTES} == {"F", "B", "L", "R"}
    assert {chr(b) for b in FLAG_BYTES} == {"W", "w", "U", "u"}
    assert chr(STOP_BYTE) == "S"


def test_motion_bytes_select_motion():
    s = ControllerState()
    for ch, motion in (("F", Motion.FORWARD), ("B", Motion.BACKWARD),
                       ("L", Motion.LEFT), ("R", Motion.RIGHT)):
        s2, drive = step_controller(s, ord(ch))
        assert s2.motion is motion
        assert drive.any_running()


def test_unknown_byte_stops_drive():
    s, _ = feed(ControllerState(), "F")
    s, drive = step_controller(s, STOP_BYTE)
    assert s.motion is Motion.STOPPED
    assert not drive.any_running()
    # arbitrary junk behaves identically
    s, _ = feed(ControllerState(), "F")
    s, drive = step_controller(s, 0x00)
    assert s.motion is Motion.STOPPED
    assert not drive.any_running()


def test_left_pattern_spins_ccw():
    _, drive = feed(ControllerState(), "L")
    dirs = tuple(c.direction for c in drive.channels())
    assert dirs == (Direction.BACKWARD, Direction.BACKWARD,
                    Direction.FORWARD, Direction.FORWARD)


def test_faithful_flag_latency():
    """A flag byte reaches its pin only on the NEXT processed byte."""
    s = ControllerState()
    s, _ = step_controller(s, ord("W"))
    assert s.mower_flag and not s.mower_pin
    s, _ = step_controller(s, STOP_BYTE)
    assert s.mower_flag and s.mower_pin
    # turning it off lags the same way
    s, _ = step_controller(s, ord("w"))
    assert not s.mower_flag and s.mower_pin
    s, _ = step_controller(s, STOP_BYTE)
    assert not s.mower_pin


def test_faithful_flag_byte_stops_drive():
    s, _ = feed(ControllerState(), "F")
    s, drive = step_controller(s, ord("U"))
    assert s.motion is Motion.STOPPED
    assert not drive.any_running()
    assert s.pump_flag and not s.pump_pin


def test_faithful_pins_frozen_during_silence():
    s, _ = feed(ControllerState(), "W")
    # no further bytes: the pin never catches up, drive output holds
    assert not s.mower_pin
    assert idle_hold(s) == drive_for(s)


def test_corrected_flag_applies_immediately():
    s = ControllerState(mode=Mode.CORRECTED)
    s, _ = step_controller(s, ord("U"))
    assert s.pump_flag and s.pump_pin
    s, _ = step_controller(s, ord("u"))
    assert not s.pump_flag and not s.pump_pin


def test_corrected_speed_scales_drive():
    s = set_speed(ControllerState(mode=Mode.CORRECTED), 128)
    s, drive = step_controller(s, ord("F"))
    assert all(c.pwm == 128 for c in drive.channels())
    assert all(c.direction is Direction.FORWARD for c in drive.channels())


def test_faithful_speed_locked_at_full():
    with pytest.raises(ControllerModeError):
        set_speed(ControllerState(), 128)
    with pytest.raises(ValueError):
        ControllerState(speed_pwm=128)  # FAITHFUL state can't hold other pwm
    _, drive = feed(ControllerState(), "F")
    assert all(c.pwm == 255 for c in drive.channels())


def test_set_speed_range():
    s = ControllerState(mode=Mode.CORRECTED)
    with pytest.raises(ValueError):
        set_speed(s, 256)
    with pytest.raises(ValueError):
        set_speed(s, -1)


def test_byte_range_checked():
    with pytest.raises(ValueError):
        step_controller(ControllerState(), 256)
    with pytest.raises(ValueError):
        step_controller(ControllerState(), -1)


def test_idle_hold_keeps_last_motion():
    s, drive0 = feed(ControllerState(), "F")
    assert idle_hold(s) == drive0
    assert idle_hold(s).any_running()


def test_classify_byte():
    assert classify_byte(ord("F")) == "FORWARD"
    assert classify_byte(ord("W")) == "MOWER_ON"
    assert classify_byte(ord("u")) == "PUMP_OFF"
    assert classify_byte(ord("S")) == "OTHER"
    assert classify_byte(0x7F) == "OTHER"


def test_state_is_immutable():
    s = ControllerState()
    s2, _ = step_controller(s, ord("F"))
    assert s.motion is Motion.STOPPED
    assert s2 is not s
