/**
 * Field rendering, split so the interesting part is pure.
 *
 * planCoverage() turns a CoverageMap into the exact list of cell rectangles
 * a canvas pass will paint — one rect per covered cell, y flipped because
 * the field's y points up and the canvas's y points down. Tests count and
 * measure those rects directly; drawPlan() just replays them onto a 2D
 * context and is deliberately too thin to hide bugs.
 */

import type { CoverageMap } from "./coverage.js";

export interface Viewport {
  widthPx: number;
  heightPx: number;
}

export interface CellRect {
  i: number;
  j: number;
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface SprayRect extends CellRect {
  /** 0..1 paint opacity, proportional to dose / max dose. */
  alpha: number;
}

export interface RobotMarker {
  x: number;
  y: number;
  /** Screen-space heading in radians (canvas y down), 0 = +x. */
  headingRad: number;
}

export interface CoveragePlan {
  /** Pixels per meter (uniform; the field keeps its aspect ratio). */
  scale: number;
  /** Whole-field backdrop rectangle in pixels. */
  field: { x: number; y: number; w: number; h: number };
  cellPx: number;
  mowed: CellRect[];
  sprayed: SprayRect[];
}

/** Pixel rect for cell (i, j): j is flipped so row 0 sits at the bottom. */
function cellRect(
  i: number,
  j: number,
  ny: number,
  cellPx: number,
): Omit<CellRect, "i" | "j"> {
  return {
    x: i * cellPx,
    y: (ny - 1 - j) * cellPx,
    w: cellPx,
    h: cellPx,
  };
}

export function planCoverage(map: CoverageMap, vp: Viewport): CoveragePlan {
  const dims = map.field;
  if (!dims) throw new Error("cannot plan a render before field dimensions are known");
  const nx = map.nx;
  const ny = map.ny;
  const scale = Math.min(vp.widthPx / dims.width_m, vp.heightPx / dims.height_m);
  const cellPx = dims.cell_m * scale;

  const mowed: CellRect[] = [];
  for (const { i, j } of map.mowedCells()) {
    mowed.push({ i, j, ...cellRect(i, j, ny, cellPx) });
  }

  const maxDose = map.maxDoseL();
  const sprayed: SprayRect[] = [];
  for (const { i, j, dose } of map.sprayedCells()) {
    sprayed.push({
      i,
      j,
      ...cellRect(i, j, ny, cellPx),
      alpha: maxDose > 0 ? Math.min(1, dose / maxDose) : 0,
    });
  }

  return {
    scale,
    field: { x: 0, y: 0, w: nx * cellPx, h: ny * cellPx },
    cellPx,
    mowed,
    sprayed,
  };
}

/** Map a field pose (meters, y up, heading CCW) into the plan's pixel space. */
export function robotMarker(
  plan: CoveragePlan,
  pose: { x: number; y: number; heading: number },
): RobotMarker {
  return {
    x: pose.x * plan.scale,
    y: plan.field.h - pose.y * plan.scale,
    headingRad: -pose.heading,
  };
}

/** The slice of CanvasRenderingContext2D the draw pass touches. */
export interface Painter {
  fillStyle: string;
  globalAlpha: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  fill(): void;
}

export const COLORS = {
  field: "#1c2b1c",
  mowed: "#4c7a3d",
  spray: "#3fa7d6",
  robot: "#f2c14e",
} as const;

export function drawPlan(
  ctx: Painter,
  plan: CoveragePlan,
  pose?: { x: number; y: number; heading: number },
): void {
  ctx.globalAlpha = 1;
  ctx.fillStyle = COLORS.field;
  ctx.fillRect(plan.field.x, plan.field.y, plan.field.w, plan.field.h);

  ctx.fillStyle = COLORS.mowed;
  for (const r of plan.mowed) ctx.fillRect(r.x, r.y, r.w, r.h);

  ctx.fillStyle = COLORS.spray;
  for (const r of plan.sprayed) {
    ctx.globalAlpha = 0.25 + 0.75 * r.alpha;
    ctx.fillRect(r.x, r.y, r.w, r.h);
  }
  ctx.globalAlpha = 1;

  if (pose) {
    const m = robotMarker(plan, pose);
    const len = Math.max(8, plan.cellPx * 4);
    const half = len * 0.45;
    const cos = Math.cos(m.headingRad);
    const sin = Math.sin(m.headingRad);
    ctx.fillStyle = COLORS.robot;
    ctx.beginPath();
    ctx.moveTo(m.x + cos * len, m.y + sin * len);
    ctx.lineTo(m.x - sin * half, m.y + cos * half);
    ctx.lineTo(m.x + sin * half, m.y - cos * half);
    ctx.closePath();
    ctx.fill();
  }
}
