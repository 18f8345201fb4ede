"""Telemetry frames: versioned, line-serializable snapshots of the robot.

Two frame kinds share one schema: "frame" carries the live state plus the
coverage cells changed since the previous frame; "snapshot" additionally
carries the full nonzero coverage and the field dimensions, letting a
subscriber rebuild its view from scratch (sent on subscribe and after a
reset). Consumers that drop frames lose only intermediate deltas; a fresh
snapshot restores them.
"""

import json
from typing import Optional

import jsonschema

from .engine import Simulation

SCHEMA_ID = "agrisim.telemetry/1"

_NUM = {"type": "number"}
_BOOL = {"type": "boolean"}
_INT = {"type": "integer"}

FRAME_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": SCHEMA_ID,
    "type": "object",
    "additionalProperties": False,
    "required": [
        "schema", "kind", "t", "tick", "pose", "v", "omega", "soc_pct",
        "soc_ah", "tank_l", "motion", "mower_pin", "pump_pin", "mower_flag",
        "pump_flag", "speed_pwm", "mode", "boom", "nozzle", "solar_on",
        "counters", "flags", "cells_sprayed", "cells_mowed",
    ],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "kind": {"enum": ["frame", "snapshot"]},
        "t": _NUM,
        "tick": _INT,
        "pose": {
            "type": "object",
            "required": ["x", "y", "heading"],
            "additionalProperties": False,
            "properties": {"x": _NUM, "y": _NUM, "heading": _NUM},
        },
        "v": _NUM,
        "omega": _NUM,
        "soc_pct": _NUM,
        "soc_ah": _NUM,
        "tank_l": _NUM,
        "motion": {"enum": ["STOPPED", "FORWARD", "BACKWARD", "LEFT", "RIGHT"]},
        "mower_pin": _BOOL,
        "pump_pin": _BOOL,
        "mower_flag": _BOOL,
        "pump_flag": _BOOL,
        "speed_pwm": _INT,
        "mode": {"enum": ["FAITHFUL", "CORRECTED"]},
        "boom": {
            "type": "object",
            "required": ["vertical_ext_in", "horizontal_ext_in", "yaw_deg", "pitch_deg"],
            "additionalProperties": False,
            "properties": {"vertical_ext_in": _NUM, "horizontal_ext_in": _NUM,
                           "yaw_deg": _NUM, "pitch_deg": _NUM},
        },
        "nozzle": {
            "type": "object",
            "required": ["cap_turns", "droplet_um", "range_in"],
            "additionalProperties": False,
            "properties": {"cap_turns": _INT, "droplet_um": _NUM, "range_in": _NUM},
        },
        "solar_on": _BOOL,
        "counters": {
            "type": "object",
            "required": ["area_sprayed_m2", "area_mowed_m2", "liquid_used_l",
                         "distance_m"],
            "additionalProperties": False,
            "properties": {"area_sprayed_m2": _NUM, "area_mowed_m2": _NUM,
                           "liquid_used_l": _NUM, "distance_m": _NUM},
        },
        "flags": {
            "type": "object",
            "required": ["battery_dead", "pump_dry", "boom_clamped", "runaway"],
            "additionalProperties": False,
            "properties": {"battery_dead": _BOOL, "pump_dry": _BOOL,
                           "boom_clamped": _BOOL, "runaway": _BOOL},
        },
        "cells_sprayed": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_INT, _INT, _NUM],
                      "minItems": 3, "maxItems": 3},
        },
        "cells_mowed": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_INT, _INT],
                      "minItems": 2, "maxItems": 2},
        },
        "field": {
            "type": "object",
            "required": ["width_m", "height_m", "cell_m"],
            "additionalProperties": False,
            "properties": {"width_m": _NUM, "height_m": _NUM, "cell_m": _NUM},
        },
    },
}

_VALIDATOR = jsonschema.Draft7Validator(FRAME_SCHEMA)


def validate_frame(frame: dict) -> None:
    """Raise jsonschema.ValidationError if the frame breaks the schema."""
    _VALIDATOR.validate(frame)


class FrameBuilder:
    """Builds telemetry frames from a Simulation.

    Owns the grid's change drain: each frame() call consumes the cells
    changed since the previous call. Exactly one builder should feed all
    subscribers (the station fans frames out).
    """

    def __init__(self, sim: Simulation):
        self.sim = sim
        self.runaway = False

    def _base(self, kind: str) -> dict:
        s = self.sim.snapshot()
        flags = dict(s.flags)
        flags["runaway"] = self.runaway
        setting = self.sim.nozzle_setting
        return {
            "schema": SCHEMA_ID,
            "kind": kind,
            "t": s.t,
            "tick": s.tick,
            "pose": {"x": s.pose.x, "y": s.pose.y, "heading": s.pose.heading},
            "v": s.v,
            "omega": s.omega,
            "soc_pct": 100.0 * s.battery.soc_fraction,
            "soc_ah": s.battery.soc_ah,
            "tank_l": s.tank.level_l,
            "motion": s.controller.motion.value,
            "mower_pin": s.controller.mower_pin,
            "pump_pin": s.controller.pump_pin,
            "mower_flag": s.controller.mower_flag,
            "pump_flag": s.controller.pump_flag,
            "speed_pwm": s.controller.speed_pwm,
            "mode": s.controller.mode.value,
            "boom": {
                "vertical_ext_in": s.boom.vertical_ext_in,
                "horizontal_ext_in": s.boom.horizontal_ext_in,
                "yaw_deg": s.boom.yaw_deg,
                "pitch_deg": s.boom.pitch_deg,
            },
            "nozzle": {"cap_turns": s.cap_turns, "droplet_um": setting.droplet_um,
                       "range_in": setting.range_in},
            "solar_on": s.solar_on,
            "counters": {
                "area_sprayed_m2": self.sim.grid.sprayed_area_m2(),
                "area_mowed_m2": self.sim.grid.mowed_area_m2(),
                "liquid_used_l": self.sim.liquid_used_l,
                "distance_m": self.sim.distance_m,
            },
            "flags": flags,
        }

    def frame(self) -> dict:
        f = self._base("frame")
        sprayed, mowed = self.sim.grid.drain_changes()
        f["cells_sprayed"] = sprayed
        f["cells_mowed"] = mowed
        return f

    def snapshot_frame(self) -> dict:
        """Full-state frame; does not consume the pending delta."""
        f = self._base("snapshot")
        grid = self.sim.grid
        cells = grid.nonzero_cells()
        f["cells_sprayed"] = cells["sprayed"]
        f["cells_mowed"] = cells["mowed"]
        f["field"] = {"width_m": grid.width_m, "height_m": grid.height_m,
                      "cell_m": grid.cell_m}
        return f


def frame_line(frame: dict) -> str:
    """One NDJSON line per frame; deterministic key order."""
    return json.dumps(frame, sort_keys=True, separators=(",", ":"))
