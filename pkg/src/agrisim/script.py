"""Mission scripts: a timed list of control events, parsed from plain text.

Grammar (one event per line, `#` starts a comment):

    <t_seconds> SEND <byte>          deliver one command byte (char or 0xNN)
    <t_seconds> BOOM <axis> <value>  set a boom axis set-point
    <t_seconds> NOZZLE <turns>       set the nozzle cap (integer 0..7)
    <t_seconds> SOLAR <on|off>       toggle panel input
    <t_seconds> SPEED <pwm>          set drive PWM (corrected mode only)
    <t_seconds> END                  end of mission (required, exactly once)

Times must be non-decreasing and END must be the last event. Event times
quantize to the simulation tick grid (nearest tick, ties toward earlier);
the canonical form of a script re-serializes the quantized events, and its
SHA-256 digest identifies a mission in reports and replay checks.
"""

import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

BOOM_AXES = ("vertical", "horizontal", "yaw", "pitch")
KINDS = ("SEND", "BOOM", "NOZZLE", "SOLAR", "SPEED", "END")

Arg = Union[int, float, str, bool]


class ScriptError(ValueError):
    """Script text rejected; message carries source and line number."""


@dataclass(frozen=True)
class ScriptEvent:
    t: float
    kind: str
    args: tuple[Arg, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.t < 0 or not math.isfinite(self.t):
            raise ValueError(f"event time must be finite and >= 0, got {self.t}")


@dataclass(frozen=True)
class MissionScript:
    events: tuple[ScriptEvent, ...]

    @property
    def end_time(self) -> float:
        return self.events[-1].t if self.events else 0.0

    def quantized(self, dt: float) -> list[tuple[int, ScriptEvent]]:
        """(tick, event) pairs on the dt grid, preserving input order."""
        return [(quantize_tick(e.t, dt), e) for e in self.events]

    def canonical_lines(self, dt: float) -> list[str]:
        out = []
        for tick, e in self.quantized(dt):
            out.append(format_event(tick * dt, e.kind, e.args))
        return out

    def digest(self, dt: float) -> str:
        return digest_lines(self.canonical_lines(dt))


def quantize_tick(t: float, dt: float) -> int:
    """Nearest tick to time t; exact half-tick offsets round earlier."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    return max(0, math.ceil(t / dt - 0.5))


def digest_lines(lines: Iterable[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def format_byte(b: int) -> str:
    return chr(b) if 33 <= b <= 126 else f"0x{b:02X}"


def format_event(t: float, kind: str, args: tuple[Arg, ...]) -> str:
    head = f"{repr(float(t))} {kind}"
    if kind == "SEND":
        return f"{head} {format_byte(args[0])}"
    if kind == "BOOM":
        return f"{head} {args[0]} {repr(float(args[1]))}"
    if kind == "NOZZLE":
        return f"{head} {args[0]}"
    if kind == "SOLAR":
        return f"{head} {'on' if args[0] else 'off'}"
    if kind == "SPEED":
        return f"{head} {args[0]}"
    return head  # END


def _parse_byte(token: str, where: str) -> int:
    if len(token) == 1:
        return ord(token)
    if token.lower().startswith("0x"):
        try:
            b = int(token, 16)
        except ValueError:
            raise ScriptError(f"{where}: bad byte literal {token!r}") from None
        if 0 <= b <= 255:
            return b
    raise ScriptError(f"{where}: SEND expects a single character or 0xNN, got {token!r}")


def _parse_int(token: str, lo: int, hi: int, what: str, where: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise ScriptError(f"{where}: {what} expects an integer, got {token!r}") from None
    if not lo <= v <= hi:
        raise ScriptError(f"{where}: {what} must be in {lo}..{hi}, got {v}")
    return v


def _parse_event(tokens: list[str], where: str) -> ScriptEvent:
    try:
        t = float(tokens[0])
    except ValueError:
        raise ScriptError(f"{where}: bad time {tokens[0]!r}") from None
    if not math.isfinite(t) or t < 0:
        raise ScriptError(f"{where}: time must be finite and >= 0, got {tokens[0]}")
    kind = tokens[1].upper()
    args = tokens[2:]

    def need(n: int):
        if len(args) != n:
            raise ScriptError(f"{where}: {kind} takes {n} argument(s), got {len(args)}")

    if kind == "SEND":
        need(1)
        return ScriptEvent(t, kind, (_parse_byte(args[0], where),))
    if kind == "BOOM":
        need(2)
        axis = args[0].lower()
        if axis not in BOOM_AXES:
            raise ScriptError(f"{where}: boom axis must be one of {', '.join(BOOM_AXES)}")
        try:
            value = float(args[1])
        except ValueError:
            raise ScriptError(f"{where}: bad boom value {args[1]!r}") from None
        if not math.isfinite(value):
            raise ScriptError(f"{where}: boom value must be finite")
        return ScriptEvent(t, kind, (axis, value))
    if kind == "NOZZLE":
        need(1)
        return ScriptEvent(t, kind, (_parse_int(args[0], 0, 7, "NOZZLE", where),))
    if kind == "SOLAR":
        need(1)
        token = args[0].lower()
        if token not in ("on", "off"):
            raise ScriptError(f"{where}: SOLAR expects on or off, got {args[0]!r}")
        return ScriptEvent(t, kind, (token == "on",))
    if kind == "SPEED":
        need(1)
        return ScriptEvent(t, kind, (_parse_int(args[0], 0, 255, "SPEED", where),))
    if kind == "END":
        need(0)
        return ScriptEvent(t, kind)
    raise ScriptError(f"{where}: unknown event kind {tokens[1]!r}")


def parse_script(text: str, source: str = "<script>") -> MissionScript:
    """Parse script text, enforcing ordering and the single trailing END."""
    events: list[ScriptEvent] = []
    last_t = 0.0
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if saw_end:
            raise ScriptError(f"{where}: event after END")
        tokens = line.split()
        if len(tokens) < 2:
            raise ScriptError(f"{where}: expected '<t> <KIND> [args]', got {line!r}")
        ev = _parse_event(tokens, where)
        if ev.t < last_t:
            raise ScriptError(f"{where}: time {ev.t} goes backwards (previous {last_t})")
        last_t = ev.t
        if ev.kind == "END":
            saw_end = True
        events.append(ev)
    if not saw_end:
        raise ScriptError(f"{source}: missing END event")
    return MissionScript(tuple(events))


DIRECTIVE_KINDS = ("BOOM", "NOZZLE", "SOLAR", "SPEED")


def parse_directive(line: str, source: str = "<directive>") -> ScriptEvent:
    """Parse a timeless directive line (same grammar as script events).

    Only the out-of-band kinds are accepted; command bytes travel on the
    control channel, END and RESET are not events.
    """
    tokens = line.split()
    if not tokens:
        raise ScriptError(f"{source}: empty directive")
    if tokens[0].upper() not in DIRECTIVE_KINDS:
        raise ScriptError(
            f"{source}: directive must be one of {', '.join(DIRECTIVE_KINDS)}, "
            f"got {tokens[0]!r}")
    return _parse_event(["0"] + tokens, source)


def load_script(path: str) -> MissionScript:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_script(fh.read(), source=path)


def script_from_events(events: Iterable[ScriptEvent],
                       end_time: Optional[float] = None) -> MissionScript:
    """Build a script from recorded events, appending END if absent."""
    evs = list(events)
    if not evs or evs[-1].kind != "END":
        t_end = end_time if end_time is not None else (evs[-1].t if evs else 0.0)
        evs.append(ScriptEvent(t_end, "END"))
    return MissionScript(tuple(evs))
