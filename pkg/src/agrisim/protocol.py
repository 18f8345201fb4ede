"""Single-byte RC protocol: the on-board controller's state machine.

The controller consumes a stream of single-byte commands over a serial link.
Eight bytes mean something: F/B/L/R select a motion, W/w latch the mower flag
on/off, U/u latch the pump flag. Every other byte is a valid no-op that stops
the drive (the per-byte cycle begins by stopping, and only motion bytes start
it again).

FAITHFUL mode reproduces the deployed firmware byte-for-byte, including two
quirks worth keeping:

* per-byte cycle order is stop-drive, write accessory pins from the flags as
  they stood BEFORE this byte, then decode the byte. A flag byte therefore
  reaches its output pin only when the NEXT byte is processed (one-command
  latency), and the pins never change during radio silence.
* the drive always runs at full PWM; the hand-held app's speed slider has no
  effect on this firmware.

CORRECTED mode fixes both: flags update before the pin write and motion runs
at an adjustable PWM set via set_speed.
"""

from dataclasses import dataclass, replace
from enum import Enum

from .kinematics import Direction, DriveState, MotorChannelState


class Motion(Enum):
    STOPPED = "STOPPED"
    FORWARD = "FORWARD"
    BACKWARD = "BACKWARD"
    LEFT = "LEFT"
    RIGHT = "RIGHT"


class Mode(Enum):
    FAITHFUL = "FAITHFUL"
    CORRECTED = "CORRECTED"


MOTION_BYTES = {ord("F"): Motion.FORWARD, ord("B"): Motion.BACKWARD,
                ord("L"): Motion.LEFT, ord("R"): Motion.RIGHT}
FLAG_BYTES = {ord("W"): ("mower_flag", True), ord("w"): ("mower_flag", False),
              ord("U"): ("pump_flag", True), ord("u"): ("pump_flag", False)}

# Conventional stop byte. It carries no special meaning to the controller:
# like any unlisted byte it falls through the decoder and leaves the drive
# stopped. Named here so station and UI agree on which byte to send.
STOP_BYTE = ord("S")


def classify_byte(b: int) -> str:
    """Human-readable label for a command byte (telemetry/logging)."""
    if b in MOTION_BYTES:
        return MOTION_BYTES[b].value
    if b in FLAG_BYTES:
        field, on = FLAG_BYTES[b]
        return ("MOWER_" if field == "mower_flag" else "PUMP_") + ("ON" if on else "OFF")
    return "OTHER"


class ControllerModeError(RuntimeError):
    """Operation not available in the controller's current mode."""


# channel patterns per motion: (m1, m2, m3, m4) directions.
# M1/M2 drive the left side, M3/M4 the right; LEFT runs the sides in
# opposition so the robot spins counter-clockwise in place.
_F, _B = Direction.FORWARD, Direction.BACKWARD
_MOTION_PATTERN = {
    Motion.STOPPED: None,
    Motion.FORWARD: (_F, _F, _F, _F),
    Motion.BACKWARD: (_B, _B, _B, _B),
    Motion.LEFT: (_B, _B, _F, _F),
    Motion.RIGHT: (_F, _F, _B, _B),
}


@dataclass(frozen=True)
class ControllerState:
    motion: Motion = Motion.STOPPED
    mower_flag: bool = False
    pump_flag: bool = False
    mower_pin: bool = False
    pump_pin: bool = False
    speed_pwm: int = 255
    mode: Mode = Mode.FAITHFUL

    def __post_init__(self):
        if not 0 <= self.speed_pwm <= 255:
            raise ValueError(f"speed_pwm out of range: {self.speed_pwm}")
        if self.mode is Mode.FAITHFUL and self.speed_pwm != 255:
            raise ValueError("FAITHFUL mode always runs at pwm 255")


def drive_for(state: ControllerState) -> DriveState:
    """DriveState the controller's output pins command right now."""
    pattern = _MOTION_PATTERN[state.motion]
    if pattern is None:
        return DriveState()
    pwm = state.speed_pwm
    m1, m2, m3, m4 = (MotorChannelState(d, pwm) for d in pattern)
    return DriveState(m1, m2, m3, m4)


def step_controller(state: ControllerState, byte: int) -> tuple[ControllerState, DriveState]:
    """Process one received byte through the per-byte cycle.

    FAITHFUL order: stop the drive, copy the pre-byte flags to the accessory
    pins, then decode the byte (motion select or flag latch). CORRECTED
    decodes the flag bytes first so pins follow flags with no latency.
    Unknown bytes leave the drive stopped and everything else untouched.
    """
    if not 0 <= byte <= 255:
        raise ValueError(f"byte out of range: {byte}")
    motion = Motion.STOPPED
    mower, pump = state.mower_flag, state.pump_flag
    if state.mode is Mode.CORRECTED and byte in FLAG_BYTES:
        field, on = FLAG_BYTES[byte]
        if field == "mower_flag":
            mower = on
        else:
            pump = on
    mower_pin, pump_pin = mower, pump
    if state.mode is Mode.FAITHFUL and byte in FLAG_BYTES:
        field, on = FLAG_BYTES[byte]
        if field == "mower_flag":
            mower = on
        else:
            pump = on
    if byte in MOTION_BYTES:
        motion = MOTION_BYTES[byte]
    new = replace(state, motion=motion, mower_flag=mower, pump_flag=pump,
                  mower_pin=mower_pin, pump_pin=pump_pin)
    return new, drive_for(new)


def idle_hold(state: ControllerState) -> DriveState:
    """Drive output while no byte arrives: the last command holds forever.

    There is no dead-man timer. A broken link leaves a moving robot moving;
    the station surfaces that as a runaway warning rather than quietly
    stopping the drive.
    """
    return drive_for(state)


def set_speed(state: ControllerState, pwm: int) -> ControllerState:
    """Set the PWM used for subsequent motion commands (CORRECTED only)."""
    if state.mode is not Mode.CORRECTED:
        raise ControllerModeError("speed control requires CORRECTED mode")
    if not 0 <= pwm <= 255:
        raise ValueError(f"pwm out of range: {pwm}")
    return replace(state, speed_pwm=pwm)
