import { describe, expect, it } from "vitest";

import { SCHEMA_ID, parseFrame, telemetrySchema } from "../src/telemetry.js";
import { validFrame } from "./frames.js";
import { loadTelemetryLines } from "./fixtures.js";

describe("telemetry schema", () => {
  it("accepts every line the simulator actually emitted", () => {
    const lines = loadTelemetryLines();
    expect(lines.length).toBeGreaterThan(0);
    for (const line of lines) {
      const frame = parseFrame(line);
      expect(frame.schema).toBe(SCHEMA_ID);
      expect(frame.kind).toBe("frame");
    }
  });

  it("accepts a hand-built frame and types its cells", () => {
    const frame = parseFrame(JSON.stringify(validFrame()));
    expect(frame.cells_sprayed).toEqual([[1, 2, 0.003]]);
    expect(frame.cells_mowed).toEqual([[3, 4]]);
  });

  it("requires field dimensions on snapshots and accepts them", () => {
    const bare = { ...validFrame(), kind: "snapshot" };
    expect(telemetrySchema.safeParse(bare).success).toBe(false);
    const withField = {
      ...bare,
      field: { width_m: 20, height_m: 20, cell_m: 0.05 },
    };
    const parsed = telemetrySchema.parse(withField);
    expect(parsed.kind).toBe("snapshot");
    if (parsed.kind === "snapshot") {
      expect(parsed.field.cell_m).toBe(0.05);
    }
  });

  it("rejects a wrong schema id", () => {
    const f = { ...validFrame(), schema: "agrisim.telemetry/2" };
    expect(telemetrySchema.safeParse(f).success).toBe(false);
  });

  it("rejects a missing required key", () => {
    const f = validFrame();
    delete f["tank_l"];
    expect(telemetrySchema.safeParse(f).success).toBe(false);
  });

  it("rejects unknown keys (strict objects, like the published schema)", () => {
    const f = { ...validFrame(), surprise: 1 };
    expect(telemetrySchema.safeParse(f).success).toBe(false);
    const g = validFrame();
    g["pose"] = { x: 0, y: 0, heading: 0, z: 0 };
    expect(telemetrySchema.safeParse(g).success).toBe(false);
  });

  it("rejects enum and integer violations", () => {
    expect(
      telemetrySchema.safeParse({ ...validFrame(), motion: "SIDEWAYS" }).success,
    ).toBe(false);
    expect(telemetrySchema.safeParse({ ...validFrame(), tick: 1.5 }).success).toBe(false);
    expect(
      telemetrySchema.safeParse({ ...validFrame(), mode: "APPROXIMATE" }).success,
    ).toBe(false);
  });

  it("rejects malformed cell tuples", () => {
    expect(
      telemetrySchema.safeParse({ ...validFrame(), cells_sprayed: [[1, 2]] }).success,
    ).toBe(false);
    expect(
      telemetrySchema.safeParse({ ...validFrame(), cells_mowed: [[1, 2, 3]] }).success,
    ).toBe(false);
  });

  it("reports where and why a frame was rejected", () => {
    expect(() => parseFrame("not json")).toThrow(/not JSON/);
    const f = { ...validFrame(), motion: "SIDEWAYS" };
    expect(() => parseFrame(JSON.stringify(f))).toThrow(/motion/);
  });
});
