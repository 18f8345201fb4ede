"""Skid-steer drive kinematics: motor channels to body twist to pose update.

Four wheel motors on two PWM-driven sides. Channels M1, M2 are the left pair
and M3, M4 the right pair (a config flag swaps them if the harness is wired
mirror-image). FORWARD on every channel drives the robot forward; a spin turn
runs the sides in opposition. Pose integrates the exact unicycle arc, so a
step is one rigid motion and results are independent of step size for constant
input.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import Pose2D, normalize_heading


class Direction(Enum):
    RELEASE = 0
    FORWARD = 1
    BACKWARD = 2


@dataclass(frozen=True)
class MotorChannelState:
    direction: Direction = Direction.RELEASE
    pwm: int = 0

    def __post_init__(self):
        if not 0 <= self.pwm <= 255:
            raise ValueError(f"pwm out of range: {self.pwm}")

    def signed_fraction(self) -> float:
        """Speed as a fraction of full scale, signed by direction."""
        if self.direction is Direction.RELEASE or self.pwm == 0:
            return 0.0
        f = self.pwm / 255.0
        return f if self.direction is Direction.FORWARD else -f


STOPPED = MotorChannelState()


@dataclass(frozen=True)
class DriveState:
    m1: MotorChannelState = STOPPED
    m2: MotorChannelState = STOPPED
    m3: MotorChannelState = STOPPED
    m4: MotorChannelState = STOPPED

    def channels(self) -> tuple[MotorChannelState, ...]:
        return (self.m1, self.m2, self.m3, self.m4)

    def any_running(self) -> bool:
        return any(c.signed_fraction() != 0.0 for c in self.channels())


def side_speeds(drive: DriveState, v_max: float,
                swap_sides: bool = False) -> tuple[float, float]:
    """(left, right) ground speeds in m/s.

    Each side's pair shares an axle, so its speed is the mean of its two
    channel speeds; a disagreeing pair averages rather than stalls.
    """
    a = (drive.m1.signed_fraction() + drive.m2.signed_fraction()) / 2.0
    b = (drive.m3.signed_fraction() + drive.m4.signed_fraction()) / 2.0
    if swap_sides:
        a, b = b, a
    return a * v_max, b * v_max


def body_twist(drive: DriveState, v_max: float, track_width: float,
               swap_sides: bool = False) -> tuple[float, float]:
    """(v, omega): forward speed in m/s and yaw rate in rad/s (CCW +)."""
    left, right = side_speeds(drive, v_max, swap_sides)
    return (left + right) / 2.0, (right - left) / track_width


def advance_arc(x: float, y: float, heading: float, v: float, omega: float,
                dt: float) -> tuple[float, float, float]:
    """Scalar core of the arc integrator; returns (x, y, heading).

    Uses the half-angle form of the arc chord, v*dt * sinc(w*dt/2) along the
    mid-step heading, which equals the textbook (v/w)*(sin(h1)-sin(h0)) but
    stays well-conditioned as omega -> 0 (no huge-radius cancellation).
    """
    if dt == 0.0 or (v == 0.0 and omega == 0.0):
        return x, y, heading
    half = 0.5 * omega * dt
    # evaluate sin(t)/t as one ratio: it's exactly 1.0 for tiny t, and
    # grouping it keeps the product out of the subnormal range
    chord = v * dt if half == 0.0 else v * dt * (math.sin(half) / half)
    mid = heading + half
    x += chord * math.cos(mid)
    y += chord * math.sin(mid)
    if omega == 0.0:
        return x, y, heading
    return x, y, normalize_heading(heading + omega * dt)


def integrate_pose(pose: Pose2D, v: float, omega: float, dt: float) -> Pose2D:
    """Advance a pose along the constant-twist arc for dt seconds."""
    x, y, h = advance_arc(pose.x, pose.y, pose.heading, v, omega, dt)
    return Pose2D(x, y, h)
