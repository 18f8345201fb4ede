"""Spray boom model: four axes positioning two nozzles, plus workspace math.

The boom is a T-bar on the chassis center: a vertical axis raises it, a
horizontal axis extends it, the T-joint yaws the whole bar, and each nozzle
pitches about the bar. The two nozzles sit at opposite ends of the bar, so at
zero yaw they point off the robot's left and right sides and share one yaw
angle (the bar rotates as a unit). Extensions are in inches to match the
hardware travel specs; poses come out in meters in the field frame.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .config import RobotConfig
from .geometry import Pose2D
from .units import in_to_m


class Side(Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"


@dataclass(frozen=True)
class BoomState:
    vertical_ext_in: float = 0.0    # [0, vertical travel]
    horizontal_ext_in: float = 0.0  # [0, horizontal travel]
    yaw_deg: float = 0.0            # bar rotation about vertical, CCW +
    pitch_deg: float = 0.0          # nozzle tilt from horizontal, down is -


def clamp_boom(boom: BoomState, cfg: RobotConfig) -> tuple[BoomState, tuple[str, ...]]:
    """Clamp every axis to its travel range.

    Returns the clamped state and the names of the axes that moved; callers
    surface the report (never silently absorb an out-of-range set-point).
    """
    limits = {
        "vertical_ext_in": (0.0, cfg.vertical_travel_in),
        "horizontal_ext_in": (0.0, cfg.horizontal_travel_in),
        "yaw_deg": (-cfg.boom_yaw_limit_deg, cfg.boom_yaw_limit_deg),
        "pitch_deg": (-cfg.nozzle_pitch_limit_deg, cfg.nozzle_pitch_limit_deg),
    }
    clamped = {}
    touched = []
    for name, (lo, hi) in limits.items():
        v = getattr(boom, name)
        if math.isnan(v):
            raise ValueError(f"{name} is NaN")
        w = min(max(v, lo), hi)
        clamped[name] = w
        if w != v:
            touched.append(name)
    return BoomState(**clamped), tuple(touched)


@dataclass(frozen=True)
class NozzlePose:
    """A nozzle's tip position (m, field frame) and unit spray direction."""

    x: float
    y: float
    z: float
    axis: tuple[float, float, float]


def nozzle_pose(robot: Pose2D, boom: BoomState, cfg: RobotConfig,
                side: Side = Side.LEFT) -> NozzlePose:
    """Pose of one nozzle given the robot pose and boom axes.

    Height is the boom's lowest position plus vertical extension; radial
    reach is the shortest reach plus horizontal extension. The bar end sits
    at field-frame azimuth heading +/- 90 degrees (left/right) minus the
    shared yaw; the spray axis points radially outward, tilted by pitch.
    """
    boom, _ = clamp_boom(boom, cfg)
    z = in_to_m(cfg.nozzle_height_min_in + boom.vertical_ext_in)
    r = in_to_m(cfg.nozzle_reach_min_in + boom.horizontal_ext_in)
    offset = math.pi / 2.0 if side is Side.LEFT else -math.pi / 2.0
    az = robot.heading + offset - math.radians(boom.yaw_deg)
    pitch = math.radians(boom.pitch_deg)
    cp = math.cos(pitch)
    return NozzlePose(
        x=robot.x + r * math.cos(az),
        y=robot.y + r * math.sin(az),
        z=z,
        axis=(cp * math.cos(az), cp * math.sin(az), math.sin(pitch)),
    )


def annulus_area(r_min: float, r_max: float) -> float:
    """Area between two concentric circles; the reachable ground ring."""
    if r_min < 0 or r_min > r_max:
        raise ValueError(f"need 0 <= r_min <= r_max, got {r_min}, {r_max}")
    return math.pi * (r_max * r_max - r_min * r_min)


def pitch_height_gain(offset: float, arm: float, angle_deg: float) -> float:
    """Height gained by tilting a nozzle arm up by angle_deg.

    The arm's effective length is the hypotenuse of the mount offset and the
    arm itself; the gain is that length times sin(angle).
    """
    if offset < 0 or arm < 0:
        raise ValueError("offset and arm must be >= 0")
    return math.hypot(offset, arm) * math.sin(math.radians(angle_deg))
