/**
 * Browser entry point: wires the panels in index.html to the station.
 *
 * All behavior lives in the imported modules (and is tested there); this
 * file is DOM glue only. The UI sends bytes and directives, renders what
 * telemetry says, and never advances state on its own.
 */

import { UiSession } from "./session.js";
import {
  ControlChannel,
  DirectiveChannel,
  TelemetryChannel,
  stationUrls,
  type WsFactory,
} from "./transport.js";
import {
  KEY_ACTIONS,
  boomDirective,
  nozzleDirective,
  solarDirective,
  RESET_DIRECTIVE,
  type MotionAction,
} from "./protocol.js";
import { drawPlan, planCoverage, type Painter } from "./render.js";
import type { TelemetryFrame } from "./telemetry.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const canvas = $<HTMLCanvasElement>("field");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("canvas 2d context unavailable");

const statusTable = $<HTMLTableElement>("status");
const linkStatus = $("link-status");
const byteLog = $<HTMLPreElement>("log");
const replyLog = $<HTMLPreElement>("replies");
const mowerBtn = $<HTMLButtonElement>("mower");
const pumpBtn = $<HTMLButtonElement>("pump");
const solarBtn = $<HTMLButtonElement>("solar");

let control: ControlChannel | null = null;
let directives: DirectiveChannel | null = null;
let telemetry: TelemetryChannel | null = null;

const session = new UiSession({
  sendByte: (b) => control?.sendByte(b),
  sendDirective: (line) => {
    void directives?.send(line).then((reply) => {
      appendLine(replyLog, reply);
    });
  },
});

function appendLine(el: HTMLPreElement, line: string): void {
  el.textContent = `${el.textContent ?? ""}${line}\n`;
  el.scrollTop = el.scrollHeight;
}

function fmt(n: number, digits = 2): string {
  return n.toFixed(digits);
}

function statusRows(f: TelemetryFrame): Array<[string, string, string?]> {
  const deg = (f.pose.heading * 180) / Math.PI;
  const mm = session.mismatch();
  const mowerCls = mm?.mower ? "pending" : "";
  const pumpCls = mm?.pump ? "pending" : "";
  const rows: Array<[string, string, string?]> = [
    ["t", `${fmt(f.t)} s (tick ${f.tick})`],
    ["pose", `x ${fmt(f.pose.x)} y ${fmt(f.pose.y)} hdg ${fmt(deg, 1)} deg`],
    ["motion", `${f.motion}  v ${fmt(f.v)} m/s  omega ${fmt(f.omega)} rad/s`],
    ["battery", `${fmt(f.soc_pct, 1)} % (${fmt(f.soc_ah, 3)} Ah)`],
    ["tank", `${fmt(f.tank_l, 3)} L`],
    ["mode", `${f.mode}  pwm ${f.speed_pwm}`],
    ["mower", `req ${onOff(f.mower_flag)} / pin ${onOff(f.mower_pin)}`, mowerCls],
    ["pump", `req ${onOff(f.pump_flag)} / pin ${onOff(f.pump_pin)}`, pumpCls],
    [
      "boom",
      `v ${fmt(f.boom.vertical_ext_in, 1)}" h ${fmt(f.boom.horizontal_ext_in, 1)}"` +
        ` yaw ${fmt(f.boom.yaw_deg, 1)} pitch ${fmt(f.boom.pitch_deg, 1)}`,
    ],
    [
      "nozzle",
      `${f.nozzle.cap_turns} turns  ${fmt(f.nozzle.droplet_um, 0)} um  ` +
        `${fmt(f.nozzle.range_in, 0)}" throw`,
    ],
    ["solar", onOff(f.solar_on)],
    [
      "coverage",
      `mowed ${fmt(f.counters.area_mowed_m2)} m2  sprayed ${fmt(f.counters.area_sprayed_m2)} m2`,
    ],
    [
      "totals",
      `liquid ${fmt(f.counters.liquid_used_l, 3)} L  distance ${fmt(f.counters.distance_m)} m`,
    ],
  ];
  const alerts: string[] = [];
  if (f.flags.battery_dead) alerts.push("BATTERY DEAD");
  if (f.flags.pump_dry) alerts.push("TANK DRY");
  if (f.flags.boom_clamped) alerts.push("BOOM CLAMPED");
  if (f.flags.runaway) alerts.push("RUNAWAY: no controller while moving");
  rows.push(["alerts", alerts.length ? alerts.join(" | ") : "none", alerts.length ? "alert" : "ok"]);
  return rows;
}

function onOff(b: boolean): string {
  return b ? "on" : "off";
}

function renderStatus(f: TelemetryFrame): void {
  statusTable.replaceChildren(
    ...statusRows(f).map(([k, v, cls]) => {
      const tr = document.createElement("tr");
      const kt = document.createElement("td");
      kt.className = "k";
      kt.textContent = k;
      const vt = document.createElement("td");
      if (cls) vt.className = cls;
      vt.textContent = v;
      tr.append(kt, vt);
      return tr;
    }),
  );
  mowerBtn.classList.toggle("active", session.requested.mower);
  pumpBtn.classList.toggle("active", session.requested.pump);
  solarBtn.classList.toggle("active", f.solar_on);
}

function redraw(): void {
  if (!session.coverage.field) return;
  const plan = planCoverage(session.coverage, {
    widthPx: canvas.width,
    heightPx: canvas.height,
  });
  // CanvasRenderingContext2D is a Painter except fillStyle also admits
  // gradients/patterns, which the draw pass never assigns
  drawPlan(ctx as unknown as Painter, plan, session.latest?.pose);
}

function onFrame(frame: TelemetryFrame): void {
  session.onFrame(frame);
  renderStatus(frame);
  redraw();
}

function connect(): void {
  const base = $<HTMLInputElement>("base").value.trim();
  const urls = stationUrls(base);
  const factory: WsFactory = (url) => new WebSocket(url);
  control?.close();
  telemetry?.close();
  directives?.close();
  control = new ControlChannel(factory, urls.control, {
    onStatus: (s) => (linkStatus.textContent = `control ${s}`),
    onRefused: (reason) => appendLine(replyLog, reason),
  });
  telemetry = new TelemetryChannel(factory, urls.telemetry, {
    onFrame,
    onBadFrame: (e) => appendLine(replyLog, `bad frame: ${e.message}`),
  });
  directives = new DirectiveChannel(factory, urls.directives);
}

function sendMotion(action: MotionAction): void {
  session.drive(action);
  logLastByte();
}

function logLastByte(): void {
  const last = session.sent[session.sent.length - 1];
  if (last) appendLine(byteLog, `${last.seq}: '${String.fromCharCode(last.byte)}' ${last.label}`);
}

$("connect").addEventListener("click", connect);

for (const btn of document.querySelectorAll<HTMLButtonElement>("button[data-motion]")) {
  btn.addEventListener("click", () => sendMotion(btn.dataset.motion as MotionAction));
}

mowerBtn.addEventListener("click", () => {
  session.mower(!session.requested.mower);
  logLastByte();
});
pumpBtn.addEventListener("click", () => {
  session.pump(!session.requested.pump);
  logLastByte();
});

window.addEventListener("keydown", (ev) => {
  if (ev.target instanceof HTMLInputElement) return;
  const action = KEY_ACTIONS[ev.key];
  if (action) {
    ev.preventDefault();
    session.act(action);
    logLastByte();
  } else if (ev.key === "m") {
    session.mower(!session.requested.mower);
    logLastByte();
  } else if (ev.key === "p") {
    session.pump(!session.requested.pump);
    logLastByte();
  }
});

$("boom-send").addEventListener("click", () => {
  for (const axis of ["vertical", "horizontal", "yaw", "pitch"] as const) {
    const value = Number($<HTMLInputElement>(`boom-${axis}`).value);
    session.directive(boomDirective(axis, value));
  }
});

$("nozzle-send").addEventListener("click", () => {
  const turns = Number($<HTMLInputElement>("nozzle-turns").value);
  session.directive(nozzleDirective(turns));
});

let solarOn = false;
solarBtn.addEventListener("click", () => {
  solarOn = !solarOn;
  session.directive(solarDirective(solarOn));
});

$("reset").addEventListener("click", () => {
  session.directive(RESET_DIRECTIVE);
});
