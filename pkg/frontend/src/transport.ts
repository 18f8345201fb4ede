/**
 * Thin WebSocket wrappers for the station's three channels.
 *
 * * control:    client -> server, raw command bytes (sent as binary frames).
 *               The station pairs with ONE controller; a second connection
 *               is told "error control channel already in use" and closed.
 *               Dropping this socket does NOT stop the robot.
 * * telemetry:  server -> client, one JSON frame per message. The station
 *               sends a full snapshot on connect, then live frames,
 *               lossy-latest for slow readers.
 * * directives: text lines both ways; every line sent gets exactly one
 *               "ok ..."/"error ..." reply line, in order.
 *
 * Sockets are injected via a factory so all of this runs under test with
 * fakes; the browser entry point passes the native WebSocket.
 */

import { parseFrame, type TelemetryFrame } from "./telemetry.js";

/**
 * Structural subset of the browser WebSocket that the wrappers need.
 * Handler params are `any` so the native WebSocket satisfies this shape
 * directly (its handlers take DOM Event types).
 */
export interface WsLike {
  binaryType?: string;
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
  send(data: string | ArrayBufferLike | Uint8Array): void;
  close(code?: number): void;
}

export type WsFactory = (url: string) => WsLike;

export type ChannelStatus = "connecting" | "open" | "closed" | "refused";

export interface ChannelEvents {
  onStatus?: (status: ChannelStatus) => void;
}

abstract class Channel {
  protected ws: WsLike;
  status: ChannelStatus = "connecting";

  constructor(
    factory: WsFactory,
    url: string,
    private readonly events: ChannelEvents,
  ) {
    this.ws = factory(url);
    if ("binaryType" in this.ws) this.ws.binaryType = "arraybuffer";
    this.ws.onopen = () => this.setStatus("open");
    this.ws.onclose = () => {
      if (this.status !== "refused") this.setStatus("closed");
    };
    this.ws.onerror = () => {
      if (this.status === "connecting") this.setStatus("closed");
    };
    this.ws.onmessage = (ev: { data: unknown }) => this.handleMessage(ev.data);
  }

  protected setStatus(status: ChannelStatus): void {
    this.status = status;
    this.events.onStatus?.(status);
  }

  protected abstract handleMessage(data: unknown): void;

  close(): void {
    this.ws.close();
  }
}

export interface ControlEvents extends ChannelEvents {
  /** The station already has a controller; this connection was rejected. */
  onRefused?: (reason: string) => void;
}

export class ControlChannel extends Channel {
  constructor(
    factory: WsFactory,
    url: string,
    private readonly controlEvents: ControlEvents = {},
  ) {
    super(factory, url, controlEvents);
  }

  sendByte(b: number): void {
    this.ws.send(Uint8Array.of(b));
  }

  protected handleMessage(data: unknown): void {
    // The only server->client traffic on this channel is the rejection
    // notice sent to a second controller.
    if (typeof data === "string" && data.startsWith("error")) {
      this.setStatus("refused");
      this.controlEvents.onRefused?.(data);
    }
  }
}

export interface TelemetryEvents extends ChannelEvents {
  onFrame?: (frame: TelemetryFrame) => void;
  onBadFrame?: (err: Error) => void;
}

export class TelemetryChannel extends Channel {
  constructor(
    factory: WsFactory,
    url: string,
    private readonly telemetryEvents: TelemetryEvents = {},
  ) {
    super(factory, url, telemetryEvents);
  }

  protected handleMessage(data: unknown): void {
    if (typeof data !== "string") return;
    try {
      this.telemetryEvents.onFrame?.(parseFrame(data));
    } catch (e) {
      this.telemetryEvents.onBadFrame?.(e as Error);
    }
  }
}

export class DirectiveChannel extends Channel {
  private pending: Array<(reply: string) => void> = [];

  constructor(factory: WsFactory, url: string, events: ChannelEvents = {}) {
    super(factory, url, events);
  }

  /**
   * Send one directive line; resolves with the station's reply line.
   * Replies arrive strictly in send order on this single connection, so a
   * FIFO pairs them up.
   */
  send(line: string): Promise<string> {
    return new Promise((resolve) => {
      this.pending.push(resolve);
      this.ws.send(line);
    });
  }

  protected handleMessage(data: unknown): void {
    if (typeof data !== "string") return;
    const resolve = this.pending.shift();
    resolve?.(data);
  }
}

export interface StationUrls {
  control: string;
  telemetry: string;
  directives: string;
}

export function stationUrls(base: string): StationUrls {
  const root = base.replace(/\/+$/, "");
  return {
    control: `${root}/control`,
    telemetry: `${root}/telemetry`,
    directives: `${root}/directives`,
  };
}
