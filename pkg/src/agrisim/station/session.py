"""Live-session recording: everything needed to replay a session as a script.

The recorder stores each applied control event with the tick it took effect
on. Serializing gives canonical script text whose times land on the same
ticks when re-quantized, so replaying the file through the scripted runner
reproduces the live mission state for state.
"""

from dataclasses import dataclass

from ..script import Arg, digest_lines, format_event


@dataclass(frozen=True)
class SessionEntry:
    tick: int
    kind: str
    args: tuple[Arg, ...]


class SessionRecorder:
    def __init__(self, dt: float):
        if dt <= 0:
            raise ValueError("dt must be > 0")
        self.dt = dt
        self.entries: list[SessionEntry] = []

    def record(self, tick: int, kind: str, args: tuple[Arg, ...] = ()) -> None:
        if self.entries and tick < self.entries[-1].tick:
            raise ValueError("session entries must be recorded in tick order")
        self.entries.append(SessionEntry(tick, kind, args))

    def clear(self) -> None:
        self.entries.clear()

    def canonical_lines(self, end_tick: int) -> list[str]:
        """Event lines plus a trailing END at end_tick."""
        lines = [format_event(e.tick * self.dt, e.kind, e.args) for e in self.entries]
        lines.append(format_event(end_tick * self.dt, "END", ()))
        return lines

    def script_text(self, end_tick: int) -> str:
        return "\n".join(self.canonical_lines(end_tick)) + "\n"

    def digest(self, end_tick: int) -> str:
        return digest_lines(self.canonical_lines(end_tick))

    def event_count(self, end_tick: int) -> int:
        return len(self.canonical_lines(end_tick))
