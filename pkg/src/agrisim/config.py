"""Robot configuration: physical parameters, presets, and config-file loading.

Every parameter carries its unit in the field name. Defaults describe the
as-built machine; named presets capture the alternate values found on the
component spec sheets where those disagree with the measured behavior (the
measured values win by default). See docs/config.md for the full schema.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

from .units import in_to_m


@dataclass(frozen=True)
class CurrentDraws:
    """Per-device current draw in amps."""

    drive_motor_a: float = 0.06   # each of the four wheel motors
    mower_a: float = 0.06
    pump_a: float = 0.3
    controller_a: float = 0.02
    h_actuator_a: float = 0.3     # each of the two horizontal actuators
    v_actuator_a: float = 0.5

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or v < 0:
                raise ValueError(f"{f.name} must be a non-negative number, got {v!r}")


@dataclass(frozen=True)
class RobotConfig:
    # chassis and drive
    chassis_length_in: float = 22.9
    chassis_width_in: float = 14.2
    chassis_height_in: float = 9.5
    wheel_dia_in: float = 15.0
    wheel_width_in: float = 4.5
    # Not directly measured; chassis width + one wheel width, converted.
    track_width_m: float = 0.475
    v_max_mps: float = 1.43       # loaded top speed, measured
    drive_motor_rpm: float = 250.0
    swap_motor_sides: bool = False  # set if M1/M2 are wired to the right side

    # mower
    mower_rpm: float = 1000.0
    blade_sweep_radius_m: float = 0.31
    mower_clearance_in: float = 3.0

    # spray boom (two nozzles on a shared T-bar)
    nozzle_height_min_in: float = 46.8
    nozzle_height_max_in: float = 56.8
    nozzle_reach_min_in: float = 12.5
    nozzle_reach_max_in: float = 32.6
    boom_yaw_limit_deg: float = 90.0
    nozzle_pitch_limit_deg: float = 40.0
    # None: axes jump to their set-points instantly (hand-positioned rig).
    # A rate makes the powered linear axes glide toward set-points instead.
    boom_rate_in_per_s: Optional[float] = None

    # pump / tank / nozzle
    pump_flow_l_min: float = 1.5
    tank_capacity_l: float = 1.0
    spray_half_angle_deg: float = 14.04  # atan(5/20) from the measured cone

    # power
    battery_capacity_ah: float = 4.5
    battery_voltage_v: float = 12.0
    panel_power_w: float = 100.0
    panel_voltage_v: float = 21.0
    panel_current_a: float = 4.5  # as measured; power/voltage gives 4.76

    current_draws: CurrentDraws = field(default_factory=CurrentDraws)

    def __post_init__(self):
        positive = [
            "chassis_length_in", "chassis_width_in", "chassis_height_in",
            "wheel_dia_in", "wheel_width_in", "track_width_m", "v_max_mps",
            "drive_motor_rpm", "mower_rpm", "blade_sweep_radius_m",
            "mower_clearance_in", "boom_yaw_limit_deg", "nozzle_pitch_limit_deg",
            "pump_flow_l_min", "tank_capacity_l", "battery_capacity_ah",
            "battery_voltage_v", "panel_voltage_v",
        ]
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("panel_power_w", "panel_current_a"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        for lo, hi in (
            ("nozzle_height_min_in", "nozzle_height_max_in"),
            ("nozzle_reach_min_in", "nozzle_reach_max_in"),
        ):
            if not 0 < getattr(self, lo) < getattr(self, hi):
                raise ValueError(f"need 0 < {lo} < {hi}")
        if not 0 < self.spray_half_angle_deg < 90:
            raise ValueError("spray_half_angle_deg must be in (0, 90)")
        if self.boom_rate_in_per_s is not None and self.boom_rate_in_per_s <= 0:
            raise ValueError("boom_rate_in_per_s must be > 0 when set")

    # derived geometry
    @property
    def vertical_travel_in(self) -> float:
        return self.nozzle_height_max_in - self.nozzle_height_min_in

    @property
    def horizontal_travel_in(self) -> float:
        return self.nozzle_reach_max_in - self.nozzle_reach_min_in

    @property
    def blade_sweep_radius_in(self) -> float:
        return self.blade_sweep_radius_m / in_to_m(1.0)

    def replace(self, **kw) -> "RobotConfig":
        return dataclasses.replace(self, **kw)


# Alternate parameter sets where a component's spec sheet disagrees with the
# measured behavior the defaults reproduce. Applying one overrides just the
# listed fields.
PRESETS: dict[str, dict] = {
    # the small on-board battery option (defaults use the 2x6V 4.5Ah pair)
    "small_battery": {"battery_capacity_ah": 1.3},
    # pump spec-sheet flow (350-700 L/h); defaults use the measured 1.5 L/min
    "spec_sheet_pump": {"pump_flow_l_min": 525.0 / 60.0},
    # nominal 120 degree full-cone nozzle instead of the measured cone
    "nominal_cone": {"spray_half_angle_deg": 60.0},
    # read the 31 cm blade figure as a diameter rather than a sweep radius
    "blade_diameter": {"blade_sweep_radius_m": 0.155},
    # powered linear axes glide at the actuator's no-load 12 mm/s
    "powered_boom": {"boom_rate_in_per_s": 12.0 / 25.4},
    # bench rig with the boom dropped low enough that the spray can reach
    # the ground plane (the field geometry keeps it above the 35 in throw)
    "low_boom": {"nozzle_height_min_in": 12.0, "nozzle_height_max_in": 22.0},
}

# one-line provenance notes per parameter, mirrored in docs/config.md
PARAM_NOTES: dict[str, str] = {
    "track_width_m": "derived: chassis width + wheel width, not a measured value",
    "v_max_mps": "measured loaded top speed; not derived from motor rpm",
    "pump_flow_l_min": "measured through-nozzle flow; spec sheet says 350-700 L/h",
    "battery_capacity_ah": "two 6V 4.5Ah packs in series; small_battery preset has the 1.3Ah option",
    "panel_current_a": "measured output; panel_power_w/panel_voltage_v gives 4.76 A",
    "spray_half_angle_deg": "from the measured cone (10 in dia at 20 in); nominal_cone preset has 60",
    "blade_sweep_radius_m": "31 cm blade figure read as sweep radius; blade_diameter preset halves it",
    "nozzle_height_min_in": "lowest nozzle position; vertical travel is 10 in on top of this",
}


class ConfigError(ValueError):
    """Config file rejected; message carries file and line number."""


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RobotConfig)}
_DRAW_FIELDS = {f.name for f in dataclasses.fields(CurrentDraws)}


def _parse_scalar(key: str, raw: str, where: str):
    low = raw.lower()
    if key == "swap_motor_sides":
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ConfigError(f"{where}: {key} expects true/false, got {raw!r}")
    if key == "boom_rate_in_per_s" and low in ("none", "off"):
        return None
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{where}: {key} expects a number, got {raw!r}") from None


def parse_config_text(text: str, source: str = "<config>") -> RobotConfig:
    """Parse `key = value` config text into a RobotConfig.

    Lines are `key = value`, `#` starts a comment, blank lines are skipped.
    Current draws use dotted keys (`current_draws.pump_a = 0.3`); an optional
    `preset = <name>` line applies a named preset before the explicit keys.
    Unknown keys are rejected with the offending line number.
    """
    overrides: dict = {}
    draws: dict = {}
    preset_name = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if "=" not in line:
            raise ConfigError(f"{where}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not raw:
            raise ConfigError(f"{where}: missing value for {key!r}")
        if key == "preset":
            if raw not in PRESETS:
                raise ConfigError(
                    f"{where}: unknown preset {raw!r} (known: {', '.join(sorted(PRESETS))})")
            preset_name = raw
        elif key.startswith("current_draws."):
            sub = key[len("current_draws."):]
            if sub not in _DRAW_FIELDS:
                raise ConfigError(f"{where}: unknown key {key!r}")
            draws[sub] = _parse_scalar(key, raw, where)
        elif key in _FIELD_TYPES and key != "current_draws":
            overrides[key] = _parse_scalar(key, raw, where)
        else:
            raise ConfigError(f"{where}: unknown key {key!r}")

    merged: dict = dict(PRESETS[preset_name]) if preset_name else {}
    merged.update(overrides)
    if draws:
        merged["current_draws"] = CurrentDraws(**{**dataclasses.asdict(CurrentDraws()), **draws})
    try:
        return RobotConfig(**merged)
    except ValueError as e:
        raise ConfigError(f"{source}: {e}") from None


def load_config(path: str) -> RobotConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=path)
