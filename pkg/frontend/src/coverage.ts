/**
 * Client-side rebuild of the field coverage grid from telemetry.
 *
 * The station is the single source of truth; this map only mirrors it.
 * Sprayed-cell entries carry the cell's current TOTAL dose, so applying a
 * frame overwrites rather than accumulates — replaying frames, dropping
 * frames, or reapplying the same frame twice all converge to the same map
 * once the latest entry for each cell has been seen.
 *
 * Cell (i, j) covers [i*cell, (i+1)*cell) x [j*cell, (j+1)*cell) meters,
 * i along x (width), j along y (height).
 */

import type { FieldDims, TelemetryFrame } from "./telemetry.js";

export interface CellDose {
  i: number;
  j: number;
  dose: number;
}

export interface Cell {
  i: number;
  j: number;
}

const key = (i: number, j: number): string => `${i},${j}`;

function unkey(k: string): Cell {
  const comma = k.indexOf(",");
  return { i: Number(k.slice(0, comma)), j: Number(k.slice(comma + 1)) };
}

export class CoverageMap {
  private sprayed = new Map<string, number>();
  private mowed = new Set<string>();
  private dims: FieldDims | null;

  constructor(dims?: FieldDims) {
    this.dims = dims ?? null;
  }

  /** Field dimensions, once known (constructor or first snapshot). */
  get field(): FieldDims | null {
    return this.dims;
  }

  get cellM(): number {
    if (!this.dims) throw new Error("field dimensions unknown: no snapshot seen yet");
    return this.dims.cell_m;
  }

  /** Grid width in cells (round like the producer does). */
  get nx(): number {
    const d = this.dims;
    if (!d) throw new Error("field dimensions unknown: no snapshot seen yet");
    return Math.max(1, Math.round(d.width_m / d.cell_m));
  }

  get ny(): number {
    const d = this.dims;
    if (!d) throw new Error("field dimensions unknown: no snapshot seen yet");
    return Math.max(1, Math.round(d.height_m / d.cell_m));
  }

  /**
   * Fold one telemetry frame in. A snapshot resets the map to exactly its
   * contents (it is the full state); a delta frame overlays its cells.
   */
  applyFrame(frame: TelemetryFrame): void {
    if (frame.kind === "snapshot") {
      this.dims = frame.field;
      this.sprayed.clear();
      this.mowed.clear();
    }
    for (const [i, j, dose] of frame.cells_sprayed) {
      const k = key(i, j);
      if (dose > 0) this.sprayed.set(k, dose);
      else this.sprayed.delete(k);
    }
    for (const [i, j] of frame.cells_mowed) {
      this.mowed.add(key(i, j));
    }
  }

  sprayedCellCount(): number {
    return this.sprayed.size;
  }

  mowedCellCount(): number {
    return this.mowed.size;
  }

  sprayedAreaM2(): number {
    return this.sprayed.size * this.cellM * this.cellM;
  }

  mowedAreaM2(): number {
    return this.mowed.size * this.cellM * this.cellM;
  }

  totalSprayL(): number {
    let sum = 0;
    for (const dose of this.sprayed.values()) sum += dose;
    return sum;
  }

  maxDoseL(): number {
    let max = 0;
    for (const dose of this.sprayed.values()) if (dose > max) max = dose;
    return max;
  }

  doseAt(i: number, j: number): number {
    return this.sprayed.get(key(i, j)) ?? 0;
  }

  isMowed(i: number, j: number): boolean {
    return this.mowed.has(key(i, j));
  }

  *sprayedCells(): IterableIterator<CellDose> {
    for (const [k, dose] of this.sprayed) yield { ...unkey(k), dose };
  }

  *mowedCells(): IterableIterator<Cell> {
    for (const k of this.mowed) yield unkey(k);
  }

  /**
   * Number of painted cells on the region's edge: painted cells with at
   * least one 4-neighbor unpainted. This is the "one cell ring" slack a
   * rendered area comparison is allowed — any honest rasterization of the
   * same region differs from the source count by at most its boundary.
   */
  boundaryCellCount(kind: "sprayed" | "mowed"): number {
    const painted = kind === "sprayed" ? new Set(this.sprayed.keys()) : this.mowed;
    let edge = 0;
    for (const k of painted) {
      const { i, j } = unkey(k);
      if (
        !painted.has(key(i - 1, j)) ||
        !painted.has(key(i + 1, j)) ||
        !painted.has(key(i, j - 1)) ||
        !painted.has(key(i, j + 1))
      ) {
        edge += 1;
      }
    }
    return edge;
  }
}
