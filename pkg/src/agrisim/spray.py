"""Nozzle spray model and mower swath math.

The nozzle cap screws out 0..7 turns; each turn coarsens the droplets and
lengthens the throw. The spray is a cone around the nozzle axis: where the
axis meets the ground within throw range it wets a disc whose radius grows
with slant distance. Dose is spread evenly over the disc (no radial falloff
is modeled); droplet size rides along as metadata for telemetry.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .boom import NozzlePose
from .field import FieldGrid
from .units import in_to_m

# cap turns -> (droplet size um, throw range in). Odd rows are measured
# anchors; even settings interpolate linearly between their neighbors.
_TURN_ANCHORS = {1: (100.0, 9.0), 3: (150.0, 16.0), 5: (200.0, 26.0), 7: (1000.0, 35.0)}

MEASURED_HALF_ANGLE_DEG = 14.04  # atan(5/20): 10 in wide at 20 in out


@dataclass(frozen=True)
class NozzleSetting:
    cap_turns: int
    droplet_um: float
    range_in: float
    half_angle_deg: float = MEASURED_HALF_ANGLE_DEG
    flow_l_min: float = 1.5

    @property
    def closed(self) -> bool:
        return self.range_in <= 0.0


def setting_from_turns(turns: int, half_angle_deg: float = MEASURED_HALF_ANGLE_DEG,
                       flow_l_min: float = 1.5) -> NozzleSetting:
    """Nozzle behavior for a cap opened the given number of turns."""
    if not isinstance(turns, int) or isinstance(turns, bool):
        raise TypeError(f"turns must be an integer, got {turns!r}")
    if not 0 <= turns <= 7:
        raise ValueError(f"cap turns must be in 0..7, got {turns}")
    if turns == 0:
        return NozzleSetting(0, 0.0, 0.0, half_angle_deg, flow_l_min)
    if turns in _TURN_ANCHORS:
        um, rng = _TURN_ANCHORS[turns]
    else:
        (um0, r0), (um1, r1) = _TURN_ANCHORS[turns - 1], _TURN_ANCHORS[turns + 1]
        um, rng = (um0 + um1) / 2.0, (r0 + r1) / 2.0
    return NozzleSetting(turns, um, rng, half_angle_deg, flow_l_min)


@dataclass(frozen=True)
class Footprint:
    """Wetted ground disc: center (m, field frame), radius, slant distance."""

    cx: float
    cy: float
    radius_m: float
    slant_m: float


def spray_footprint(nozzle: NozzlePose, setting: NozzleSetting) -> Optional[Footprint]:
    """Ground disc wetted by a nozzle, or None if the spray never lands.

    The axis ray is cut off at the setting's throw range: spray pointing up,
    level, or meeting the ground beyond range stays airborne and wets
    nothing. Disc radius is slant distance times tan(half angle).
    """
    if setting.closed:
        return None
    if nozzle.z <= 0.0:
        raise ValueError(f"nozzle must be above ground, z={nozzle.z}")
    ax, ay, az = nozzle.axis
    if az >= 0.0:
        return None
    slant = -nozzle.z / az
    if slant > in_to_m(setting.range_in):
        return None
    radius = slant * math.tan(math.radians(setting.half_angle_deg))
    return Footprint(nozzle.x + slant * ax, nozzle.y + slant * ay, radius, slant)


def cone_tsa(radius: float, slant: float) -> float:
    """Total surface area of a cone: lateral surface plus base disc."""
    if radius < 0 or slant < 0:
        raise ValueError("radius and slant must be >= 0")
    return math.pi * radius * slant + math.pi * radius * radius


@dataclass(frozen=True)
class TankState:
    level_l: float = 1.0
    capacity_l: float = 1.0

    def __post_init__(self):
        if self.capacity_l <= 0:
            raise ValueError("tank capacity must be > 0")
        if not 0.0 <= self.level_l <= self.capacity_l:
            raise ValueError(f"tank level {self.level_l} outside [0, {self.capacity_l}]")

    @property
    def empty(self) -> bool:
        return self.level_l <= 0.0


def apply_spray(grid: FieldGrid, footprint: Optional[Footprint], flow_l_min: float,
                dt: float, tank: TankState) -> tuple[FieldGrid, TankState, float]:
    """Dispense one step's worth of liquid onto a footprint.

    Draws min(flow * dt, level) from the tank and paints it evenly over the
    footprint disc. The painted dose follows the even-split rule of
    FieldGrid.paint_disc, so any off-field share of the disc is lost, but the
    tank debit always equals the dispensed amount. No footprint (airborne or
    closed nozzle) dispenses nothing.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if footprint is None or tank.empty or flow_l_min <= 0:
        return grid, tank, 0.0
    dispensed = min(flow_l_min * dt / 60.0, tank.level_l)
    if dispensed <= 0.0:
        return grid, tank, 0.0
    grid.paint_disc(footprint.cx, footprint.cy, footprint.radius_m, dispensed)
    new_level = tank.level_l - dispensed
    if new_level < 0.0:
        new_level = 0.0
    return grid, TankState(new_level, tank.capacity_l), dispensed


def mower_active_area(blade_sweep_radius_m: float) -> float:
    """Ground area the blade covers while the robot is parked."""
    if blade_sweep_radius_m < 0:
        raise ValueError("blade sweep radius must be >= 0")
    return math.pi * blade_sweep_radius_m * blade_sweep_radius_m
