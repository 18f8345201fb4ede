/**
 * Runtime validation for "agrisim.telemetry/1" frames.
 *
 * Mirrors the station's published JSON schema (GET /schema/telemetry):
 * strict objects, same required keys, same enums. Two kinds share the
 * shape — "frame" carries cells changed since the previous frame,
 * "snapshot" carries the full nonzero coverage plus the field dimensions
 * so a late or reconnecting subscriber can rebuild from scratch.
 *
 * Sprayed-cell entries are [i, j, dose_l] where dose_l is the cell's
 * CURRENT TOTAL, not an increment: consumers overwrite, so a dropped
 * frame can never double-count.
 */

import { z } from "zod";

export const SCHEMA_ID = "agrisim.telemetry/1";

const int = z.number().int();

const sprayedCell = z.tuple([int, int, z.number()]);
const mowedCell = z.tuple([int, int]);

const pose = z.strictObject({
  x: z.number(),
  y: z.number(),
  heading: z.number(),
});

const boom = z.strictObject({
  vertical_ext_in: z.number(),
  horizontal_ext_in: z.number(),
  yaw_deg: z.number(),
  pitch_deg: z.number(),
});

const nozzle = z.strictObject({
  cap_turns: int,
  droplet_um: z.number(),
  range_in: z.number(),
});

const counters = z.strictObject({
  area_sprayed_m2: z.number(),
  area_mowed_m2: z.number(),
  liquid_used_l: z.number(),
  distance_m: z.number(),
});

const flags = z.strictObject({
  battery_dead: z.boolean(),
  pump_dry: z.boolean(),
  boom_clamped: z.boolean(),
  runaway: z.boolean(),
});

const fieldDims = z.strictObject({
  width_m: z.number(),
  height_m: z.number(),
  cell_m: z.number(),
});

const common = {
  schema: z.literal(SCHEMA_ID),
  t: z.number(),
  tick: int,
  pose,
  v: z.number(),
  omega: z.number(),
  soc_pct: z.number(),
  soc_ah: z.number(),
  tank_l: z.number(),
  motion: z.enum(["STOPPED", "FORWARD", "BACKWARD", "LEFT", "RIGHT"]),
  mower_pin: z.boolean(),
  pump_pin: z.boolean(),
  mower_flag: z.boolean(),
  pump_flag: z.boolean(),
  speed_pwm: int,
  mode: z.enum(["FAITHFUL", "CORRECTED"]),
  boom,
  nozzle,
  solar_on: z.boolean(),
  counters,
  flags,
  cells_sprayed: z.array(sprayedCell),
  cells_mowed: z.array(mowedCell),
} as const;

export const deltaFrameSchema = z.strictObject({
  kind: z.literal("frame"),
  ...common,
});

// The wire schema leaves `field` optional, but the station always includes
// it on snapshots and the UI cannot size its grid without it — so require it.
export const snapshotFrameSchema = z.strictObject({
  kind: z.literal("snapshot"),
  field: fieldDims,
  ...common,
});

export const telemetrySchema = z.discriminatedUnion("kind", [
  deltaFrameSchema,
  snapshotFrameSchema,
]);

export type DeltaFrame = z.infer<typeof deltaFrameSchema>;
export type SnapshotFrame = z.infer<typeof snapshotFrameSchema>;
export type TelemetryFrame = z.infer<typeof telemetrySchema>;
export type FieldDims = z.infer<typeof fieldDims>;

/** Parse one NDJSON/WS text payload; throws with a readable message on junk. */
export function parseFrame(text: string): TelemetryFrame {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (e) {
    throw new Error(`telemetry payload is not JSON: ${(e as Error).message}`);
  }
  const result = telemetrySchema.safeParse(raw);
  if (!result.success) {
    const first = result.error.issues[0];
    const where = first ? first.path.join(".") || "(root)" : "(unknown)";
    const what = first ? first.message : "invalid frame";
    throw new Error(`telemetry frame rejected at ${where}: ${what}`);
  }
  return result.data;
}
