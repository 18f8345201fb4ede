"""Mission artifact writing: report, telemetry log, coverage exports."""

import os
from typing import Iterable, Optional

from ..engine import MissionReport
from ..field import FieldGrid
from ..telemetry import frame_line

REPORT_NAME = "report.json"
TELEMETRY_NAME = "telemetry.ndjson"
SPRAY_PGM = "spray.pgm"
MOWED_PGM = "mowed.pgm"
SPRAY_CSV = "spray.csv"
SESSION_NAME = "session.txt"


def write_artifacts(out_dir: str, report: MissionReport, grid: FieldGrid,
                    frames: Optional[Iterable[dict]] = None,
                    session_text: Optional[str] = None) -> list[str]:
    """Write all mission artifacts into out_dir; returns the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def target(name: str) -> str:
        p = os.path.join(out_dir, name)
        written.append(p)
        return p

    with open(target(REPORT_NAME), "w", encoding="utf-8") as fh:
        fh.write(report.canonical_json())
        fh.write("\n")
    if frames is not None:
        with open(target(TELEMETRY_NAME), "w", encoding="utf-8") as fh:
            for f in frames:
                fh.write(frame_line(f))
                fh.write("\n")
    grid.spray_to_pgm(target(SPRAY_PGM))
    grid.mowed_to_pgm(target(MOWED_PGM))
    grid.spray_to_csv(target(SPRAY_CSV))
    if session_text is not None:
        with open(target(SESSION_NAME), "w", encoding="utf-8") as fh:
            fh.write(session_text)
    return written
