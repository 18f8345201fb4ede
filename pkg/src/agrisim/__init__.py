"""agrisim: deterministic simulator and teleoperation station for a
solar-powered skid-steer sprayer/mower robot.

The library layers cleanly: pure math (units, geometry, kinematics, boom,
spray, power) under a byte-level controller emulation (protocol), composed
by a fixed-timestep engine, with scripts, telemetry, and an operator station
on top. Everything is deterministic: the same script, config, and field
produce bit-identical mission reports.
"""

from .boom import BoomState, NozzlePose, Side, annulus_area, clamp_boom, nozzle_pose, pitch_height_gain
from .config import PRESETS, ConfigError, CurrentDraws, RobotConfig, load_config, parse_config_text
from .engine import DEFAULT_DT, MissionReport, RunOptions, SimState, Simulation, run_script
from .field import FieldGrid
from .geometry import Pose2D, normalize_heading
from .kinematics import Direction, DriveState, MotorChannelState, advance_arc, body_twist, integrate_pose, side_speeds
from .power import BatteryState, DeviceActivity, backup_hours, instantaneous_draw, panel_current, step_battery
from .protocol import ControllerModeError, ControllerState, Mode, Motion, STOP_BYTE, classify_byte, idle_hold, set_speed, step_controller
from .script import MissionScript, ScriptError, ScriptEvent, load_script, parse_directive, parse_script, quantize_tick
from .spray import Footprint, NozzleSetting, TankState, apply_spray, cone_tsa, mower_active_area, setting_from_turns, spray_footprint
from .telemetry import FRAME_SCHEMA, FrameBuilder, frame_line, validate_frame

__version__ = "0.1.0"

__all__ = [
    "BoomState", "NozzlePose", "Side", "annulus_area", "clamp_boom",
    "nozzle_pose", "pitch_height_gain",
    "PRESETS", "ConfigError", "CurrentDraws", "RobotConfig", "load_config",
    "parse_config_text",
    "DEFAULT_DT", "MissionReport", "RunOptions", "SimState", "Simulation",
    "run_script",
    "FieldGrid",
    "Pose2D", "normalize_heading",
    "Direction", "DriveState", "MotorChannelState", "advance_arc",
    "body_twist", "integrate_pose", "side_speeds",
    "BatteryState", "DeviceActivity", "backup_hours", "instantaneous_draw",
    "panel_current", "step_battery",
    "ControllerModeError", "ControllerState", "Mode", "Motion", "STOP_BYTE",
    "classify_byte", "idle_hold", "set_speed", "step_controller",
    "MissionScript", "ScriptError", "ScriptEvent", "load_script",
    "parse_directive", "parse_script", "quantize_tick",
    "Footprint", "NozzleSetting", "TankState", "apply_spray", "cone_tsa",
    "mower_active_area", "setting_from_turns", "spray_footprint",
    "FRAME_SCHEMA", "FrameBuilder", "frame_line", "validate_frame",
    "__version__",
]
