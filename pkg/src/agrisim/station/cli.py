"""Command-line front end: scripted runs, closed-form calculators, serving.

    agrisim run --script mission.txt --field 5x5 --out results/
    agrisim calc backup 4.5 0.62
    agrisim serve --port 8765 --pace 1

Exit codes: 0 success, 2 for any input/validation problem (bad flags,
unreadable files, malformed scripts or configs). Validation failures are
reported with file and line number and nothing is written.
"""

import argparse
import math
import os
import sys
from typing import Optional

from ..boom import annulus_area
from ..config import ConfigError, RobotConfig, load_config
from ..engine import DEFAULT_DT, RunOptions, run_script
from ..field import FieldGrid
from ..power import backup_hours
from ..protocol import Mode
from ..script import ScriptError, load_script
from ..spray import cone_tsa, mower_active_area
from ..units import sqin_to_sqm, sqm_to_sqin
from .outputs import TELEMETRY_NAME, write_artifacts
from .server import DEFAULT_PORT, PORT_ENV_VAR, Station, create_app


class CliError(Exception):
    """Input problem; message printed to stderr, exit code 2."""


def _parse_field(spec: str) -> tuple[float, float]:
    for sep in ("x", "X"):
        if sep in spec:
            w, _, h = spec.partition(sep)
            try:
                return float(w), float(h)
            except ValueError:
                break
    raise CliError(f"--field expects WxH in meters (e.g. 5x5), got {spec!r}")


def _parse_start(spec: str) -> tuple[float, float, float]:
    parts = spec.split(",")
    if len(parts) != 3:
        raise CliError(f"--start expects x,y,heading_deg, got {spec!r}")
    try:
        x, y, h = (float(p) for p in parts)
    except ValueError:
        raise CliError(f"--start expects numbers, got {spec!r}") from None
    return x, y, math.radians(h)


def _load_cfg(path: Optional[str]) -> RobotConfig:
    if path is None:
        return RobotConfig()
    if not os.path.exists(path):
        raise CliError(f"config file not found: {path}")
    return load_config(path)


def _build_options(args) -> RunOptions:
    start = _parse_start(args.start) if args.start else (None, None, 0.0)
    return RunOptions(
        dt=args.dt,
        mode=Mode.CORRECTED if args.mode == "corrected" else Mode.FAITHFUL,
        soc0_ah=args.soc0,
        tank0_l=args.tank0,
        start_x=start[0], start_y=start[1], start_heading=start[2],
        cap_turns=args.cap_turns,
        solar_on=args.solar,
        hold_actuators=args.hold_actuators,
        telemetry_every=args.telemetry_every,
    )


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="robot config file (key = value lines)")
    p.add_argument("--field", default="5x5", help="field size WxH in meters")
    p.add_argument("--cell", type=float, default=0.05, help="grid cell size in meters")
    p.add_argument("--dt", type=float, default=DEFAULT_DT, help="tick length in seconds")
    p.add_argument("--mode", choices=["faithful", "corrected"], default="faithful",
                   help="controller emulation mode")
    p.add_argument("--soc0", type=float, default=None,
                   help="initial battery charge in Ah (default: full)")
    p.add_argument("--tank0", type=float, default=None,
                   help="initial tank level in L (default: full)")
    p.add_argument("--start", default=None,
                   help="start pose x,y,heading_deg (default: field center)")
    p.add_argument("--cap-turns", type=int, default=4, help="initial nozzle cap turns")
    p.add_argument("--solar", action="store_true", help="start with the panel connected")
    p.add_argument("--hold-actuators", action="store_true",
                   help="count both boom actuators as always running (worst-case draw)")
    p.add_argument("--telemetry-every", type=int, default=4,
                   help="ticks between telemetry frames")


def cmd_run(args) -> int:
    cfg = _load_cfg(args.config)
    if not os.path.exists(args.script):
        raise CliError(f"script file not found: {args.script}")
    script = load_script(args.script)
    w, h = _parse_field(args.field)
    try:
        grid = FieldGrid(w, h, args.cell)
        options = _build_options(args)
    except ValueError as e:
        raise CliError(str(e)) from None
    sink = None
    telemetry_fh = None
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        telemetry_fh = open(os.path.join(args.out, TELEMETRY_NAME), "w",
                            encoding="utf-8")
        from ..telemetry import frame_line

        def sink(frame: dict) -> None:
            telemetry_fh.write(frame_line(frame))
            telemetry_fh.write("\n")

    try:
        report = run_script(script, cfg, grid, options, frame_sink=sink)
    finally:
        if telemetry_fh is not None:
            telemetry_fh.close()
    if args.out:
        write_artifacts(args.out, report, grid)
        print(f"wrote {args.out}")
    print(report.canonical_json())
    return 0


# reference figures the calculators are checked against; printed alongside
# the computed value when the inputs match the documented case
_CALC_REFS = {
    ("backup", (4.5, 0.62)): ("7.25 h", 7.25),
    ("backup", (4.5, 1.72)): ("2.61 h", 2.61),
    ("charge", (4.5, 4.5)): ("1 h", 1.0),
    ("workspace", (12.5, 32.6)): ("2840 sq in", 2840.0),
    ("cone", (5.0, 20.6)): ("411.11 / 411.58 sq in", 411.11),
    ("mower", (0.31,)): ("0.3 sq m (468 sq in)", 0.3),
}

_CALC_SPECS = {
    "backup": (2, "capacity_ah draw_a"),
    "charge": (2, "capacity_ah panel_current_a"),
    "workspace": (2, "reach_min_in reach_max_in"),
    "cone": (2, "radius_in slant_in"),
    "mower": (1, "blade_sweep_radius_m"),
}


def cmd_calc(args) -> int:
    kind = args.kind
    n, names = _CALC_SPECS[kind]
    if len(args.params) != n:
        raise CliError(f"calc {kind} takes {n} parameter(s): {names}")
    p = tuple(args.params)
    try:
        if kind == "backup":
            value = backup_hours(p[0], p[1])
            line = f"backup({p[0]} Ah, {p[1]} A) = {value:.4g} h"
        elif kind == "charge":
            value = backup_hours(p[0], p[1])
            line = f"charge({p[0]} Ah, {p[1]} A) = {value:.4g} h"
        elif kind == "workspace":
            value = annulus_area(p[0], p[1])
            line = (f"workspace({p[0]} in, {p[1]} in) = {value:.1f} sq in"
                    f" = {sqin_to_sqm(value):.4g} sq m")
        elif kind == "cone":
            value = cone_tsa(p[0], p[1])
            line = f"cone({p[0]} in, {p[1]} in) = {value:.2f} sq in"
        else:
            value = mower_active_area(p[0])
            line = (f"mower({p[0]} m) = {value:.4g} sq m"
                    f" = {sqm_to_sqin(value):.1f} sq in")
    except (ValueError, ZeroDivisionError) as e:
        raise CliError(str(e)) from None
    print(line)
    ref = _CALC_REFS.get((kind, p))
    if ref is not None:
        label, ref_value = ref
        delta = 100.0 * (value - ref_value) / ref_value
        print(f"  reference: {label}  (computed is {delta:+.2f}% of reference)")
    return 0


def cmd_serve(args) -> int:
    cfg = _load_cfg(args.config)
    w, h = _parse_field(args.field)
    try:
        grid = FieldGrid(w, h, args.cell)
        options = _build_options(args)
        station = Station(cfg, grid, options, pace=args.pace, out_dir=args.out)
    except ValueError as e:
        raise CliError(str(e)) from None
    app = create_app(station, autostart=not args.manual)
    import uvicorn
    port = args.port if args.port is not None else int(
        os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agrisim",
        description="Sprayer/mower robot simulator and teleoperation station")
    sub = parser.add_subparsers(dest="cmd", required=True)

    run_p = sub.add_parser("run", help="run a mission script, write artifacts")
    run_p.add_argument("--script", required=True, help="mission script file")
    run_p.add_argument("--out", default=None, help="artifact output directory")
    _add_sim_flags(run_p)
    run_p.set_defaults(fn=cmd_run)

    calc_p = sub.add_parser("calc", help="closed-form design calculators")
    calc_p.add_argument("kind", choices=sorted(_CALC_SPECS))
    calc_p.add_argument("params", nargs="*", type=float)
    calc_p.set_defaults(fn=cmd_calc)

    serve_p = sub.add_parser("serve", help="run the live teleoperation service")
    serve_p.add_argument("--port", type=int, default=None,
                         help=f"listen port (default ${PORT_ENV_VAR} or {DEFAULT_PORT})")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--pace", type=float, default=1.0,
                         help="sim seconds per wall second")
    serve_p.add_argument("--out", default=None,
                         help="write session artifacts here on shutdown")
    serve_p.add_argument("--manual", action="store_true",
                         help="no wall clock: time advances only via POST /step")
    _add_sim_flags(serve_p)
    serve_p.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"agrisim: {e}", file=sys.stderr)
        return 2
    except (ConfigError, ScriptError) as e:
        print(f"agrisim: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
