/**
 * Loaders for the recorded mission under test/fixtures/mow_lap/.
 *
 * The fixtures are produced by the simulator's own CLI (see generate.sh):
 * report.json and telemetry.ndjson from `agrisim run` on the mow-lap
 * script with a frame every tick, session.txt as the script's canonical
 * event form, and mowed.pgm as the reference coverage image. The UI tests
 * treat them as ground truth — nothing here re-simulates anything.
 */

import { readFileSync } from "node:fs";

const fixture = (name: string): string =>
  new URL(`./fixtures/mow_lap/${name}`, import.meta.url).pathname;

export interface MissionReport {
  area_mowed_m2: number;
  area_sprayed_m2: number;
  cells_mowed: number;
  cells_sprayed: number;
  distance_m: number;
  dt: number;
  duration_s: number;
  ticks: number;
  event_count: number;
  event_digest: string;
  liquid_used_l: number;
  setup: {
    field_width_m: number;
    field_height_m: number;
    cell_m: number;
    dt: number;
    mode: string;
  };
}

export function loadReport(): MissionReport {
  return JSON.parse(readFileSync(fixture("report.json"), "utf8")) as MissionReport;
}

export function loadTelemetryLines(): string[] {
  return readFileSync(fixture("telemetry.ndjson"), "utf8")
    .split("\n")
    .filter((line) => line.length > 0);
}

export interface SessionEvent {
  t: number;
  tick: number;
  kind: string;
  args: string[];
}

/** Quantize an event time to its tick, matching the simulator's rule. */
export function quantizeTick(t: number, dt: number): number {
  return Math.max(0, Math.ceil(t / dt - 0.5));
}

export function loadSession(dt: number): SessionEvent[] {
  return readFileSync(fixture("session.txt"), "utf8")
    .split("\n")
    .filter((line) => line.trim().length > 0)
    .map((line) => {
      const parts = line.split(/\s+/);
      const t = Number(parts[0]);
      return {
        t,
        tick: quantizeTick(t, dt),
        kind: parts[1] ?? "",
        args: parts.slice(2),
      };
    });
}

/** Count white (255) pixels in the plain-text graymap reference image. */
export function loadMowedPgmWhiteCount(): number {
  const tokens = readFileSync(fixture("mowed.pgm"), "utf8").trim().split(/\s+/);
  if (tokens[0] !== "P2") throw new Error("expected a plain P2 graymap");
  // header: magic, width, height, maxval
  let white = 0;
  for (let k = 4; k < tokens.length; k++) {
    if (tokens[k] === "255") white += 1;
  }
  return white;
}
