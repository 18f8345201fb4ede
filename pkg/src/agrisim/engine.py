"""Fixed-timestep simulation engine composing all subsystems.

One Simulation owns the whole robot state and advances it tick by tick
(default 20 Hz). Control events (command bytes plus boom/nozzle/solar/speed
directives) queue between ticks and drain at the start of the next one, so a
mission is fully determined by (config, field, options, event times) and two
runs of the same inputs produce bit-identical reports.

Tick order, fixed: drain queued events into the controller, glide boom axes,
integrate motion, paint mow swath, dispense spray, integrate the battery,
advance the clock. A dead battery freezes the robot: the controller stops
responding to bytes, nothing moves, draws drop to zero, and only solar input
(and hand adjustments: boom, nozzle cap, panel toggle) still act. The robot
stays down for the rest of the mission; recovery is an operator reset.
"""

import json
from collections import deque
from dataclasses import asdict, dataclass, field as dc_field, replace
from typing import Callable, Optional

from .boom import BoomState, Side, clamp_boom, nozzle_pose
from .config import RobotConfig
from .field import FieldGrid
from .geometry import Pose2D
from .kinematics import DriveState, advance_arc, body_twist
from .power import BatteryState, DeviceActivity, instantaneous_draw
from .protocol import ControllerState, Mode, set_speed, step_controller
from .script import MissionScript, ScriptError, ScriptEvent, quantize_tick
from .spray import TankState, apply_spray, setting_from_turns, spray_footprint

DEFAULT_DT = 0.05


@dataclass(frozen=True)
class RunOptions:
    dt: float = DEFAULT_DT
    mode: Mode = Mode.FAITHFUL
    soc0_ah: Optional[float] = None      # None: start full
    tank0_l: Optional[float] = None      # None: start full
    start_x: Optional[float] = None      # None: field center
    start_y: Optional[float] = None
    start_heading: float = 0.0
    cap_turns: int = 4
    solar_on: bool = False
    # worst-case power mode: both boom actuators counted as always running
    hold_actuators: bool = False
    telemetry_every: int = 4             # ticks per telemetry frame

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if not 0 <= self.cap_turns <= 7:
            raise ValueError("cap_turns must be in 0..7")
        if self.telemetry_every < 1:
            raise ValueError("telemetry_every must be >= 1")


@dataclass(frozen=True)
class SimState:
    """Immutable snapshot of a simulation instant."""

    t: float
    tick: int
    pose: Pose2D
    v: float
    omega: float
    boom: BoomState
    controller: ControllerState
    drive: DriveState
    battery: BatteryState
    tank: TankState
    cap_turns: int
    solar_on: bool
    flags: dict


@dataclass(frozen=True)
class MissionReport:
    duration_s: float
    ticks: int
    dt: float
    distance_m: float
    area_sprayed_m2: float
    area_mowed_m2: float
    cells_sprayed: int
    cells_mowed: int
    liquid_used_l: float
    final_tank_l: float
    charge_used_ah: float
    solar_charged_ah: float
    final_soc_ah: float
    battery_dead: bool
    battery_dead_at_s: Optional[float]
    battery_full_at_s: Optional[float]
    pump_dry_ever: bool
    boom_clamped_ever: bool
    event_count: int
    event_digest: str
    setup: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = "agrisim.report/1"
        return d

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


class Simulation:
    """Mutable simulation actor; single-threaded by design."""

    def __init__(self, cfg: RobotConfig, grid: FieldGrid,
                 options: Optional[RunOptions] = None):
        self.cfg = cfg
        self.grid = grid
        self.opt = options or RunOptions()
        self.dt = self.opt.dt
        self._pending: deque = deque()
        self._reset_state()

    def _reset_state(self) -> None:
        opt, cfg, grid = self.opt, self.cfg, self.grid
        self.tick_index = 0
        self.x = opt.start_x if opt.start_x is not None else grid.width_m / 2.0
        self.y = opt.start_y if opt.start_y is not None else grid.height_m / 2.0
        self.heading = opt.start_heading
        self.controller = ControllerState(mode=opt.mode)
        self.drive = DriveState()
        self._v = 0.0
        self._omega = 0.0
        self._motors_active = 0
        self.boom = BoomState()
        self._boom_target_v: Optional[float] = None
        self._boom_target_h: Optional[float] = None
        self._h_moving = False
        self._v_moving = False
        self.cap_turns = opt.cap_turns
        self._setting = setting_from_turns(
            opt.cap_turns, cfg.spray_half_angle_deg, cfg.pump_flow_l_min)
        self._refresh_spray_lands()
        self.capacity_ah = cfg.battery_capacity_ah
        soc0 = self.capacity_ah if opt.soc0_ah is None else opt.soc0_ah
        if not 0.0 <= soc0 <= self.capacity_ah:
            raise ValueError(f"soc0 {soc0} outside [0, {self.capacity_ah}]")
        self.soc_ah = soc0
        tank0 = cfg.tank_capacity_l if opt.tank0_l is None else opt.tank0_l
        if not 0.0 <= tank0 <= cfg.tank_capacity_l:
            raise ValueError(f"tank0 {tank0} outside [0, {cfg.tank_capacity_l}]")
        self.tank_l = tank0
        self.solar_on = opt.solar_on
        # an empty pack cannot boot the robot; it stays down until reset
        self.battery_dead = soc0 <= 0.0
        self.battery_dead_at_s: Optional[float] = 0.0 if self.battery_dead else None
        self.battery_full_at_s: Optional[float] = None
        self.pump_dry = False
        self.pump_dry_ever = False
        self.boom_clamped = False
        self.boom_clamped_ever = False
        self.distance_m = 0.0
        self.liquid_used_l = 0.0
        self.charge_used_ah = 0.0
        self.solar_charged_ah = 0.0
        self._draw_key: Optional[tuple] = None
        self._draw_a = 0.0
        self._pending.clear()

    def reset(self) -> None:
        """Operator power-cycle: fresh state, fresh field, clock to zero."""
        self.grid.clear()
        self._reset_state()

    # event intake
    def queue_event(self, event: ScriptEvent) -> None:
        """Queue a control event; it takes effect at the next tick."""
        if event.kind == "SPEED" and self.opt.mode is not Mode.CORRECTED:
            raise ScriptError("SPEED events require CORRECTED mode")
        if event.kind == "END":
            raise ValueError("END is a script terminator, not a queueable event")
        self._pending.append(event)

    def queue_byte(self, byte: int) -> None:
        self.queue_event(ScriptEvent(self.t, "SEND", (byte,)))

    @property
    def t(self) -> float:
        return self.tick_index * self.dt

    @property
    def nozzle_setting(self):
        return self._setting

    @property
    def alive(self) -> bool:
        return not self.battery_dead

    # event application (at tick start)
    def _apply_event(self, e: ScriptEvent) -> None:
        kind = e.kind
        if kind == "SEND":
            if self.battery_dead:
                return
            self.controller, self.drive = step_controller(self.controller, e.args[0])
            self._refresh_drive()
        elif kind == "BOOM":
            self._apply_boom(e.args[0], e.args[1])
        elif kind == "NOZZLE":
            self.cap_turns = e.args[0]
            self._setting = setting_from_turns(
                self.cap_turns, self.cfg.spray_half_angle_deg, self.cfg.pump_flow_l_min)
            self._refresh_spray_lands()
        elif kind == "SOLAR":
            self.solar_on = e.args[0]
        elif kind == "SPEED":
            # pwm applies from the next motion byte; the current drive keeps
            # the pwm it was commanded with
            if self.battery_dead:
                return
            self.controller = set_speed(self.controller, e.args[0])
        else:
            raise ValueError(f"unexpected event kind {kind!r}")

    def _refresh_spray_lands(self) -> None:
        """Whether the current boom/nozzle geometry can wet the ground at all.

        The ground-hit test (nozzle height, pitch, throw range) is
        independent of the robot's pose, so it is probed once per boom or
        nozzle change and the per-tick spray step is skipped entirely while
        the spray stays airborne.
        """
        probe = nozzle_pose(Pose2D(0.0, 0.0, 0.0), self.boom, self.cfg, Side.LEFT)
        self._spray_lands = spray_footprint(probe, self._setting) is not None

    def _refresh_drive(self) -> None:
        self._v, self._omega = body_twist(
            self.drive, self.cfg.v_max_mps, self.cfg.track_width_m,
            self.cfg.swap_motor_sides)
        self._motors_active = sum(
            1 for c in self.drive.channels() if c.signed_fraction() != 0.0)

    def _apply_boom(self, axis: str, value: float) -> None:
        probe = {
            "vertical": replace(self.boom, vertical_ext_in=value),
            "horizontal": replace(self.boom, horizontal_ext_in=value),
            "yaw": replace(self.boom, yaw_deg=value),
            "pitch": replace(self.boom, pitch_deg=value),
        }[axis]
        clamped, touched = clamp_boom(probe, self.cfg)
        self.boom_clamped = bool(touched)
        self.boom_clamped_ever |= self.boom_clamped
        rate = self.cfg.boom_rate_in_per_s
        if rate is None or axis in ("yaw", "pitch"):
            self.boom = clamped
            if axis == "vertical":
                self._boom_target_v = None
            elif axis == "horizontal":
                self._boom_target_h = None
            self._refresh_spray_lands()
        elif axis == "vertical":
            self._boom_target_v = clamped.vertical_ext_in
        else:
            self._boom_target_h = clamped.horizontal_ext_in

    def _glide_boom(self) -> None:
        rate = self.cfg.boom_rate_in_per_s
        step = (rate or 0.0) * self.dt
        self._v_moving = self._h_moving = False
        if self._boom_target_v is not None:
            cur, tgt = self.boom.vertical_ext_in, self._boom_target_v
            if cur != tgt:
                self._v_moving = True
                nxt = min(cur + step, tgt) if tgt > cur else max(cur - step, tgt)
                self.boom = replace(self.boom, vertical_ext_in=nxt)
            if self.boom.vertical_ext_in == tgt:
                self._boom_target_v = None
        if self._boom_target_h is not None:
            cur, tgt = self.boom.horizontal_ext_in, self._boom_target_h
            if cur != tgt:
                self._h_moving = True
                nxt = min(cur + step, tgt) if tgt > cur else max(cur - step, tgt)
                self.boom = replace(self.boom, horizontal_ext_in=nxt)
            if self.boom.horizontal_ext_in == tgt:
                self._boom_target_h = None
        if self._v_moving or self._h_moving:
            self._refresh_spray_lands()

    def tick(self) -> None:
        """Advance one step; see module docstring for the fixed stage order."""
        cfg = self.cfg
        dt = self.dt
        # 1: control events queued since the last tick
        if self._pending:
            while self._pending:
                self._apply_event(self._pending.popleft())
        # 1b: powered boom axes glide toward their set-points
        if self._boom_target_v is not None or self._boom_target_h is not None:
            self._glide_boom()
        elif self._v_moving or self._h_moving:
            self._v_moving = self._h_moving = False
        # 2: motion along the commanded arc
        alive = not self.battery_dead
        v = self._v if alive else 0.0
        omega = self._omega if alive else 0.0
        x0, y0 = self.x, self.y
        if v != 0.0 or omega != 0.0:
            self.x, self.y, self.heading = advance_arc(
                x0, y0, self.heading, v, omega, dt)
            self.distance_m += abs(v) * dt
        # 3: mow swath over this step's motion
        if self.controller.mower_pin and alive:
            self.grid.paint_mow_swath(x0, y0, self.x, self.y,
                                      cfg.blade_sweep_radius_m)
        # 4: spray dispense
        pump_on = self.controller.pump_pin and alive
        if pump_on:
            if self.tank_l <= 0.0:
                self.pump_dry = True
                self.pump_dry_ever = True
            else:
                self.pump_dry = False
                if self._spray_lands:
                    self._dispense(dt)
        else:
            self.pump_dry = False
        # 5: power budget
        if alive:
            h_act = 2 if (self.opt.hold_actuators or self._h_moving) else 0
            v_act = self.opt.hold_actuators or self._v_moving
            key = (self._motors_active, self.controller.mower_pin,
                   self.controller.pump_pin, h_act, v_act)
            if key != self._draw_key:
                self._draw_key = key
                self._draw_a = instantaneous_draw(
                    DeviceActivity(self._motors_active, key[1], key[2],
                                   True, h_act, v_act), cfg)
            draw = self._draw_a
        else:
            draw = 0.0
        solar = cfg.panel_current_a if self.solar_on else 0.0
        soc = self.soc_ah
        new_soc = soc + (solar - draw) * dt / 3600.0
        if new_soc < 0.0:
            new_soc = 0.0
        elif new_soc > self.capacity_ah:
            new_soc = self.capacity_ah
        delta = new_soc - soc
        if delta >= 0.0:
            self.solar_charged_ah += delta
        else:
            self.charge_used_ah -= delta
        end_t = (self.tick_index + 1) * dt
        if new_soc >= self.capacity_ah and soc < self.capacity_ah \
                and self.battery_full_at_s is None:
            self.battery_full_at_s = end_t
        if new_soc <= 0.0 and draw > solar and not self.battery_dead:
            self.battery_dead = True
            self.battery_dead_at_s = end_t
        self.soc_ah = new_soc
        # 6: clock
        self.tick_index += 1

    def _dispense(self, dt: float) -> None:
        # the Y joint splits pump flow evenly between the two nozzles
        per_nozzle = self.cfg.pump_flow_l_min / 2.0
        tank = TankState(self.tank_l, self.cfg.tank_capacity_l)
        for side in (Side.LEFT, Side.RIGHT):
            pose = nozzle_pose(Pose2D(self.x, self.y, self.heading),
                               self.boom, self.cfg, side)
            fp = spray_footprint(pose, self._setting)
            _, tank, used = apply_spray(self.grid, fp, per_nozzle, dt, tank)
            self.liquid_used_l += used
        self.tank_l = tank.level_l

    # views
    def pose(self) -> Pose2D:
        return Pose2D(self.x, self.y, self.heading)

    def flags(self) -> dict:
        return {
            "battery_dead": self.battery_dead,
            "pump_dry": self.pump_dry,
            "boom_clamped": self.boom_clamped,
        }

    def snapshot(self) -> SimState:
        alive = not self.battery_dead
        return SimState(
            t=self.t, tick=self.tick_index, pose=self.pose(),
            v=self._v if alive else 0.0, omega=self._omega if alive else 0.0,
            boom=self.boom, controller=self.controller, drive=self.drive,
            battery=BatteryState(self.soc_ah, self.capacity_ah),
            tank=TankState(self.tank_l, self.cfg.tank_capacity_l),
            cap_turns=self.cap_turns, solar_on=self.solar_on, flags=self.flags())

    def setup_dict(self) -> dict:
        opt = self.opt
        return {
            "field_width_m": self.grid.width_m,
            "field_height_m": self.grid.height_m,
            "cell_m": self.grid.cell_m,
            "dt": self.dt,
            "mode": opt.mode.value,
            "soc0_ah": self.capacity_ah if opt.soc0_ah is None else opt.soc0_ah,
            "tank0_l": (self.cfg.tank_capacity_l if opt.tank0_l is None
                        else opt.tank0_l),
            "start_x": opt.start_x if opt.start_x is not None else self.grid.width_m / 2.0,
            "start_y": opt.start_y if opt.start_y is not None else self.grid.height_m / 2.0,
            "start_heading": opt.start_heading,
            "cap_turns": opt.cap_turns,
            "solar_on": opt.solar_on,
            "hold_actuators": opt.hold_actuators,
        }

    def report(self, event_count: int, event_digest: str,
               duration_ticks: Optional[int] = None) -> MissionReport:
        ticks = duration_ticks if duration_ticks is not None else self.tick_index
        return MissionReport(
            duration_s=ticks * self.dt, ticks=ticks, dt=self.dt,
            distance_m=self.distance_m,
            area_sprayed_m2=self.grid.sprayed_area_m2(),
            area_mowed_m2=self.grid.mowed_area_m2(),
            cells_sprayed=self.grid.sprayed_cell_count(),
            cells_mowed=self.grid.mowed_cell_count(),
            liquid_used_l=self.liquid_used_l, final_tank_l=self.tank_l,
            charge_used_ah=self.charge_used_ah,
            solar_charged_ah=self.solar_charged_ah, final_soc_ah=self.soc_ah,
            battery_dead=self.battery_dead,
            battery_dead_at_s=self.battery_dead_at_s,
            battery_full_at_s=self.battery_full_at_s,
            pump_dry_ever=self.pump_dry_ever,
            boom_clamped_ever=self.boom_clamped_ever,
            event_count=event_count, event_digest=event_digest,
            setup=self.setup_dict())


FrameSink = Callable[[dict], None]


def run_script(script: MissionScript, cfg: RobotConfig, grid: FieldGrid,
               options: Optional[RunOptions] = None,
               frame_sink: Optional[FrameSink] = None) -> MissionReport:
    """Run a mission script to its END event and return the report.

    Events take effect at the start of their quantized tick; the mission
    stops just before the END tick starts, so events sharing END's tick do
    not run. With a frame_sink, a telemetry frame dict is emitted every
    options.telemetry_every ticks plus one final frame.
    """
    opt = options or RunOptions()
    sim = Simulation(cfg, grid, opt)
    if opt.mode is not Mode.CORRECTED and any(e.kind == "SPEED" for e in script.events):
        raise ScriptError("script uses SPEED but the controller mode is not CORRECTED")
    timed = script.quantized(opt.dt)
    end_tick = max(tick for tick, e in timed if e.kind == "END")
    due = [(tick, e) for tick, e in timed if e.kind != "END"]
    builder = None
    if frame_sink is not None:
        from .telemetry import FrameBuilder
        builder = FrameBuilder(sim)
    idx = 0
    for k in range(end_tick):
        while idx < len(due) and due[idx][0] <= k:
            sim.queue_event(due[idx][1])
            idx += 1
        sim.tick()
        if builder is not None and (sim.tick_index % opt.telemetry_every == 0
                                    or sim.tick_index == end_tick):
            frame_sink(builder.frame())
    n_events = len(script.events)
    return sim.report(n_events, script.digest(opt.dt), duration_ticks=end_tick)
