/** Shared frame-building helpers for the test suites (not a test file). */

import { SCHEMA_ID } from "../src/telemetry.js";

/** A minimal valid delta frame, for mutation and intake tests. */
export function validFrame(): Record<string, unknown> {
  return {
    schema: SCHEMA_ID,
    kind: "frame",
    t: 0.05,
    tick: 1,
    pose: { x: 10, y: 10, heading: 0 },
    v: 0,
    omega: 0,
    soc_pct: 100,
    soc_ah: 4.5,
    tank_l: 1,
    motion: "STOPPED",
    mower_pin: false,
    pump_pin: false,
    mower_flag: true,
    pump_flag: false,
    speed_pwm: 255,
    mode: "FAITHFUL",
    boom: { vertical_ext_in: 0, horizontal_ext_in: 0, yaw_deg: 0, pitch_deg: 0 },
    nozzle: { cap_turns: 4, droplet_um: 175, range_in: 21 },
    solar_on: false,
    counters: {
      area_sprayed_m2: 0,
      area_mowed_m2: 0,
      liquid_used_l: 0,
      distance_m: 0,
    },
    flags: { battery_dead: false, pump_dry: false, boom_clamped: false, runaway: false },
    cells_sprayed: [[1, 2, 0.003]],
    cells_mowed: [[3, 4]],
  };
}
