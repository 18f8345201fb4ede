"""Power budget: device draw aggregation, battery integration, solar charging.

The battery is a plain amp-hour bucket. Each step nets the panel current
against the load and integrates; a diode between panel and battery means the
panel can only push current in, never sink it, and charging stops at
capacity. No voltage sag or temperature effects are modeled.
"""

from dataclasses import dataclass

from .config import RobotConfig


@dataclass(frozen=True)
class DeviceActivity:
    drive_motors_active: int = 0  # 0..4
    mower_on: bool = False
    pump_on: bool = False
    controller_on: bool = True
    h_actuators_active: int = 0   # 0..2
    v_actuator_active: bool = False

    def __post_init__(self):
        if not 0 <= self.drive_motors_active <= 4:
            raise ValueError(f"drive_motors_active must be 0..4, got {self.drive_motors_active}")
        if not 0 <= self.h_actuators_active <= 2:
            raise ValueError(f"h_actuators_active must be 0..2, got {self.h_actuators_active}")


@dataclass(frozen=True)
class BatteryState:
    soc_ah: float
    capacity_ah: float

    def __post_init__(self):
        if self.capacity_ah <= 0:
            raise ValueError("battery capacity must be > 0")
        if not 0.0 <= self.soc_ah <= self.capacity_ah:
            raise ValueError(f"soc {self.soc_ah} outside [0, {self.capacity_ah}]")

    @property
    def soc_fraction(self) -> float:
        return self.soc_ah / self.capacity_ah

    @property
    def dead(self) -> bool:
        return self.soc_ah <= 0.0

    @property
    def full(self) -> bool:
        return self.soc_ah >= self.capacity_ah


def instantaneous_draw(activity: DeviceActivity, cfg: RobotConfig) -> float:
    """Total current draw in amps for the devices currently running."""
    d = cfg.current_draws
    amps = activity.drive_motors_active * d.drive_motor_a
    if activity.mower_on:
        amps += d.mower_a
    if activity.pump_on:
        amps += d.pump_a
    if activity.controller_on:
        amps += d.controller_a
    amps += activity.h_actuators_active * d.h_actuator_a
    if activity.v_actuator_active:
        amps += d.v_actuator_a
    return amps


def step_battery(battery: BatteryState, draw_a: float, solar_a: float,
                 dt: float) -> BatteryState:
    """Integrate one step of net current into the battery.

    solar_a is the panel-side contribution and must be >= 0 (the series
    diode blocks any reverse flow). State of charge clamps at both ends:
    full batteries stop accepting charge, empty ones stop supplying.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if draw_a < 0 or solar_a < 0:
        raise ValueError("draw and solar currents must be >= 0")
    soc = battery.soc_ah + (solar_a - draw_a) * dt / 3600.0
    soc = min(max(soc, 0.0), battery.capacity_ah)
    return BatteryState(soc, battery.capacity_ah)


def backup_hours(capacity_ah: float, draw_a: float) -> float:
    """Runtime of a full battery at a constant draw."""
    if capacity_ah < 0:
        raise ValueError("capacity must be >= 0")
    if draw_a <= 0:
        raise ZeroDivisionError("draw must be > 0; zero draw runs indefinitely")
    return capacity_ah / draw_a


def panel_current(power_w: float, voltage_v: float) -> float:
    """Panel output current from its power rating and operating voltage."""
    if voltage_v <= 0:
        raise ValueError("voltage must be > 0")
    if power_w < 0:
        raise ValueError("power must be >= 0")
    return power_w / voltage_v
