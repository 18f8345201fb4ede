/**
 * Operator session state for the teleoperation UI.
 *
 * The UI never simulates the robot. It does exactly two things:
 *   1. turns operator input into wire bytes / directive lines and records
 *      what it REQUESTED, in order;
 *   2. folds telemetry frames into a CoverageMap and keeps the latest frame
 *      as the only source of ACTUAL robot state.
 *
 * Requested vs actual is therefore an honest display of link behavior: in
 * FAITHFUL mode an accessory toggle reaches its output pin only when the
 * next byte is decoded, and that shows up here as frames whose latched flag
 * and pin disagree — the UI highlights them rather than masking them.
 */

import { CoverageMap } from "./coverage.js";
import {
  byteForAction,
  describeByte,
  type MotionAction,
  type UiAction,
} from "./protocol.js";
import { parseFrame, type TelemetryFrame } from "./telemetry.js";

export interface ControlOutput {
  /** Push one command byte down the control channel. */
  sendByte(b: number): void;
  /** Push one directive line down the directives channel. */
  sendDirective(line: string): void;
}

export interface SentByte {
  seq: number;
  byte: number;
  label: string;
}

export interface RequestedState {
  motion: MotionAction;
  mower: boolean;
  pump: boolean;
}

export interface AccessoryMismatch {
  mower: boolean;
  pump: boolean;
}

export class UiSession {
  readonly coverage: CoverageMap;
  /** Every byte sent, in send order. */
  readonly sent: SentByte[] = [];
  /** Every directive line sent, in send order. */
  readonly directives: string[] = [];
  /** What the operator has asked for (not what the robot is doing). */
  readonly requested: RequestedState = { motion: "stop", mower: false, pump: false };
  /** Most recent telemetry frame, or null before the first one. */
  latest: TelemetryFrame | null = null;

  constructor(
    private readonly out: ControlOutput,
    coverage?: CoverageMap,
  ) {
    this.coverage = coverage ?? new CoverageMap();
  }

  /** Send the byte for one UI action and record the request. Returns the byte. */
  act(action: UiAction): number {
    const b = byteForAction(action);
    switch (action.kind) {
      case "motion":
        this.requested.motion = action.action;
        break;
      case "mower":
        this.requested.mower = action.on;
        break;
      case "pump":
        this.requested.pump = action.on;
        break;
    }
    this.out.sendByte(b);
    this.sent.push({ seq: this.sent.length, byte: b, label: describeByte(b) });
    return b;
  }

  drive(action: MotionAction): number {
    return this.act({ kind: "motion", action });
  }

  mower(on: boolean): number {
    return this.act({ kind: "mower", on });
  }

  pump(on: boolean): number {
    return this.act({ kind: "pump", on });
  }

  stop(): number {
    return this.drive("stop");
  }

  directive(line: string): void {
    this.out.sendDirective(line);
    this.directives.push(line);
  }

  /** Bytes sent so far, as characters, in order — the session's wire log. */
  sentBytesAsString(): string {
    return this.sent.map((s) => String.fromCharCode(s.byte)).join("");
  }

  /** Parse one telemetry payload, fold it in, and return the typed frame. */
  onTelemetryText(text: string): TelemetryFrame {
    return this.onFrame(parseFrame(text));
  }

  onFrame(frame: TelemetryFrame): TelemetryFrame {
    this.coverage.applyFrame(frame);
    this.latest = frame;
    return frame;
  }

  /**
   * Where the robot's own latched request disagrees with its output pin —
   * the on-wire signature of FAITHFUL one-byte accessory latency. Null
   * before any telemetry arrives.
   */
  mismatch(): AccessoryMismatch | null {
    const f = this.latest;
    if (!f) return null;
    return {
      mower: f.mower_flag !== f.mower_pin,
      pump: f.pump_flag !== f.pump_pin,
    };
  }
}
