"""Live teleoperation service: the emulated radio link over WebSockets.

Three endpoints replace the robot's serial link and the operator's eyes:

* ``/control``: raw command bytes, one connection at a time (one paired
  handset). Bytes are queued to the simulation in arrival order. Dropping
  the connection does NOT stop the robot; if it was moving, telemetry raises
  a runaway warning until a controller reconnects.
* ``/telemetry``: newline-delimited JSON frames. Each subscriber gets a full
  snapshot on connect, then live frames; slow subscribers are served
  lossy-latest (they skip intermediate frames, never block the loop).
* ``/directives``: line-oriented out-of-band controls (BOOM, NOZZLE, SOLAR,
  SPEED, RESET); each line gets an ok/error reply line.

The simulation advances on a wall-clock pacing loop (``pace`` sim-seconds
per wall second); all state changes flow through the same tick path as
scripted runs.
"""

import asyncio
import contextlib
import json
from dataclasses import replace
from typing import Optional

from fastapi import FastAPI, WebSocket
from fastapi.responses import PlainTextResponse, Response

from ..boom import clamp_boom
from ..engine import MissionReport, RunOptions, Simulation
from ..field import FieldGrid
from ..config import RobotConfig
from ..script import ScriptError, parse_directive
from ..telemetry import FRAME_SCHEMA, FrameBuilder, frame_line
from .outputs import write_artifacts
from .session import SessionRecorder

DEFAULT_PORT = 8765
PORT_ENV_VAR = "AGRISIM_PORT"


class Station:
    """One simulation actor plus its network-facing queues."""

    def __init__(self, cfg: RobotConfig, grid: FieldGrid,
                 options: Optional[RunOptions] = None, pace: float = 1.0,
                 out_dir: Optional[str] = None):
        if pace <= 0:
            raise ValueError("pace must be > 0")
        self.options = options or RunOptions()
        self.sim = Simulation(cfg, grid, self.options)
        self.builder = FrameBuilder(self.sim)
        self.recorder = SessionRecorder(self.options.dt)
        self.pace = pace
        self.out_dir = out_dir
        self.control_connected = False
        self.subscribers: list[asyncio.Queue] = []
        # cap on catch-up ticks per pacing iteration; beyond it, sim time
        # falls behind wall time instead of freezing the event loop
        self.max_burst = 4000

    # control bytes
    def receive_bytes(self, data: bytes) -> None:
        for b in data:
            self.recorder.record(self.sim.tick_index, "SEND", (b,))
            self.sim.queue_byte(b)

    # directives
    def apply_directive(self, line: str) -> str:
        text = line.strip()
        if not text:
            return "error empty directive"
        if text.upper() == "RESET":
            self.sim.reset()
            self.recorder.clear()
            self.builder.runaway = False
            self.broadcast_frame(self.builder.snapshot_frame())
            return "ok RESET"
        try:
            ev = parse_directive(text)
        except ScriptError as e:
            return f"error {e}"
        try:
            self.sim.queue_event(ev)
        except ScriptError as e:
            return f"error {e}"
        self.recorder.record(self.sim.tick_index, ev.kind, ev.args)
        note = ""
        if ev.kind == "BOOM":
            axis_field = {"vertical": "vertical_ext_in", "horizontal": "horizontal_ext_in",
                          "yaw": "yaw_deg", "pitch": "pitch_deg"}[ev.args[0]]
            probe = replace(self.sim.boom, **{axis_field: ev.args[1]})
            _, touched = clamp_boom(probe, self.sim.cfg)
            if touched:
                note = " clamped"
        args = " ".join(str(a) for a in ev.args) if ev.kind != "SOLAR" \
            else ("on" if ev.args[0] else "off")
        return f"ok {ev.kind} {args}{note}"

    # telemetry fan-out
    def broadcast_frame(self, frame: dict) -> None:
        line = frame_line(frame)
        for q in self.subscribers:
            if q.full():
                with contextlib.suppress(asyncio.QueueEmpty):
                    q.get_nowait()
            q.put_nowait(line)

    # time
    def step_ticks(self, n: int) -> None:
        every = self.options.telemetry_every
        for _ in range(n):
            self.sim.tick()
            if self.sim.tick_index % every == 0:
                self.broadcast_frame(self.builder.frame())

    async def pacing_loop(self) -> None:
        loop = asyncio.get_running_loop()
        dt = self.options.dt
        interval = max(dt / self.pace, 0.002)
        last = loop.time()
        carry = 0.0
        while True:
            await asyncio.sleep(interval)
            now = loop.time()
            carry += (now - last) * self.pace / dt
            last = now
            due = int(carry)
            carry -= due
            if due > 0:
                self.step_ticks(min(due, self.max_burst))

    # artifacts
    def session_text(self) -> str:
        return self.recorder.script_text(self.sim.tick_index)

    def report(self) -> MissionReport:
        tick = self.sim.tick_index
        return self.sim.report(self.recorder.event_count(tick),
                               self.recorder.digest(tick), duration_ticks=tick)

    def write_artifacts(self) -> list[str]:
        if self.out_dir is None:
            return []
        return write_artifacts(self.out_dir, self.report(), self.sim.grid,
                               session_text=self.session_text())


async def _ws_incoming(ws: WebSocket):
    """Yield messages until the peer disconnects."""
    while True:
        msg = await ws.receive()
        if msg["type"] == "websocket.disconnect":
            return
        yield msg


def create_app(station: Station, autostart: bool = True) -> FastAPI:
    from contextlib import asynccontextmanager

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(station.pacing_loop()) if autostart else None
        try:
            yield
        finally:
            if task is not None:
                task.cancel()
                with contextlib.suppress(asyncio.CancelledError):
                    await task
            station.write_artifacts()

    app = FastAPI(title="agrisim station", lifespan=lifespan)
    app.state.station = station

    @app.websocket("/control")
    async def control(ws: WebSocket):
        await ws.accept()
        if station.control_connected:
            await ws.send_text("error control channel already in use")
            await ws.close(code=1008)
            return
        station.control_connected = True
        station.builder.runaway = False
        try:
            async for msg in _ws_incoming(ws):
                data = msg.get("bytes")
                if data is None and msg.get("text") is not None:
                    data = msg["text"].encode("utf-8")
                if data:
                    station.receive_bytes(data)
        finally:
            station.control_connected = False
            snap = station.sim.snapshot()
            if snap.v != 0.0 or snap.omega != 0.0:
                station.builder.runaway = True

    @app.websocket("/telemetry")
    async def telemetry(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue(maxsize=1)
        station.subscribers.append(queue)

        async def pump():
            while True:
                await ws.send_text(await queue.get())

        sender = asyncio.create_task(pump())
        try:
            await ws.send_text(frame_line(station.builder.snapshot_frame()))
            async for _ in _ws_incoming(ws):
                pass  # subscribers only listen
        finally:
            sender.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await sender
            station.subscribers.remove(queue)

    @app.websocket("/directives")
    async def directives(ws: WebSocket):
        await ws.accept()
        async for msg in _ws_incoming(ws):
            text = msg.get("text")
            if text is None and msg.get("bytes") is not None:
                text = msg["bytes"].decode("utf-8", "replace")
            for line in (text or "").splitlines():
                if line.strip():
                    await ws.send_text(station.apply_directive(line))

    @app.get("/session")
    async def session() -> PlainTextResponse:
        return PlainTextResponse(station.session_text())

    @app.get("/report")
    async def report() -> Response:
        return Response(content=station.report().canonical_json(),
                        media_type="application/json")

    @app.get("/schema/telemetry")
    async def schema() -> Response:
        return Response(content=json.dumps(FRAME_SCHEMA, indent=2),
                        media_type="application/json")

    if not autostart:
        # manual clock for tests and debugging: only exists when the
        # wall-clock pacing loop is off, so the two can never fight
        @app.post("/step")
        async def step(n: int = 1) -> dict:
            if not 1 <= n <= station.max_burst:
                return {"error": f"n must be in 1..{station.max_burst}"}
            station.step_ticks(n)
            return {"tick": station.sim.tick_index, "t": station.sim.t}

    return app
