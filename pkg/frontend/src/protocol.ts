/**
 * Command-byte vocabulary of the robot's radio link.
 *
 * The wire carries single bytes. Eight select behavior (four motions, four
 * flag latches); every other byte is a harmless no-op that stops the drive.
 * 'S' is the conventional stop byte the station and UI agree on.
 *
 * In FAITHFUL mode the firmware writes its accessory output pins from the
 * flags as they stood BEFORE each byte, so a toggle request reaches its pin
 * only when the NEXT byte is processed. The UI never hides that: it shows
 * requested state (flags) and actual state (pins) side by side.
 */

export type MotionAction = "forward" | "reverse" | "spinLeft" | "spinRight" | "stop";

export type UiAction =
  | { kind: "motion"; action: MotionAction }
  | { kind: "mower"; on: boolean }
  | { kind: "pump"; on: boolean };

const byte = (ch: string): number => ch.charCodeAt(0);

export const MOTION_BYTE: Record<MotionAction, number> = {
  forward: byte("F"),
  reverse: byte("B"),
  spinLeft: byte("L"),
  spinRight: byte("R"),
  stop: byte("S"),
};

export const MOWER_BYTE = { on: byte("W"), off: byte("w") } as const;
export const PUMP_BYTE = { on: byte("U"), off: byte("u") } as const;
export const STOP_BYTE = MOTION_BYTE.stop;

export function byteForAction(action: UiAction): number {
  switch (action.kind) {
    case "motion":
      return MOTION_BYTE[action.action];
    case "mower":
      return action.on ? MOWER_BYTE.on : MOWER_BYTE.off;
    case "pump":
      return action.on ? PUMP_BYTE.on : PUMP_BYTE.off;
  }
}

/** Human-readable label for a byte, for the session log panel. */
export function describeByte(b: number): string {
  switch (b) {
    case MOTION_BYTE.forward: return "FORWARD";
    case MOTION_BYTE.reverse: return "BACKWARD";
    case MOTION_BYTE.spinLeft: return "LEFT";
    case MOTION_BYTE.spinRight: return "RIGHT";
    case MOWER_BYTE.on: return "MOWER_ON";
    case MOWER_BYTE.off: return "MOWER_OFF";
    case PUMP_BYTE.on: return "PUMP_ON";
    case PUMP_BYTE.off: return "PUMP_OFF";
    default:
      return b === STOP_BYTE ? "STOP" : `OTHER(0x${b.toString(16).padStart(2, "0")})`;
  }
}

/**
 * Keyboard layout. Deliberately NOT the wire bytes: 'w' on the keyboard
 * would collide with the mower-off byte, so keys map to actions and actions
 * map to bytes.
 */
export const KEY_ACTIONS: Record<string, UiAction> = {
  ArrowUp: { kind: "motion", action: "forward" },
  ArrowDown: { kind: "motion", action: "reverse" },
  ArrowLeft: { kind: "motion", action: "spinLeft" },
  ArrowRight: { kind: "motion", action: "spinRight" },
  " ": { kind: "motion", action: "stop" },
};

/** Directive lines for the out-of-band channel. */
export type BoomAxis = "vertical" | "horizontal" | "yaw" | "pitch";

export function boomDirective(axis: BoomAxis, value: number): string {
  if (!Number.isFinite(value)) throw new Error(`boom ${axis} value must be finite`);
  return `BOOM ${axis} ${value}`;
}

export function nozzleDirective(turns: number): string {
  if (!Number.isInteger(turns) || turns < 0 || turns > 7) {
    throw new Error(`cap turns must be an integer 0..7, got ${turns}`);
  }
  return `NOZZLE ${turns}`;
}

export function solarDirective(on: boolean): string {
  return `SOLAR ${on ? "on" : "off"}`;
}

export function speedDirective(pwm: number): string {
  if (!Number.isInteger(pwm) || pwm < 0 || pwm > 255) {
    throw new Error(`pwm must be an integer 0..255, got ${pwm}`);
  }
  return `SPEED ${pwm}`;
}

export const RESET_DIRECTIVE = "RESET";
