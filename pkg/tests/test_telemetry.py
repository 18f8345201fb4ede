import json

import jsonschema
import pytest

from agrisim.config import PRESETS, RobotConfig
from agrisim.engine import RunOptions, Simulation
from agrisim.field import FieldGrid
from agrisim.script import ScriptEvent
from agrisim.telemetry import (SCHEMA_ID, FrameBuilder, frame_line,
                               validate_frame)

LOW_BOOM = RobotConfig().replace(**PRESETS["low_boom"])


def make_sim(cfg=None):
    return Simulation(cfg or RobotConfig(), FieldGrid(10.0, 10.0, 0.05))


def test_frames_validate_against_schema():
    sim = make_sim(LOW_BOOM)
    builder = FrameBuilder(sim)
    validate_frame(builder.frame())
    validate_frame(builder.snapshot_frame())
    sim.queue_byte(ord("F"))
    sim.queue_event(ScriptEvent(0.0, "BOOM", ("pitch", -40.0)))
    sim.queue_event(ScriptEvent(0.0, "NOZZLE", (7,)))
    for _ in range(10):
        sim.tick()
    f = builder.frame()
    validate_frame(f)
    assert f["schema"] == SCHEMA_ID
    assert f["kind"] == "frame"
    assert f["tick"] == 10
    assert f["motion"] == "FORWARD"
    assert f["boom"]["pitch_deg"] == -40.0
    assert f["nozzle"]["cap_turns"] == 7


def test_schema_rejects_malformed():
    sim = make_sim()
    f = FrameBuilder(sim).frame()
    bad = dict(f)
    bad["extra_key"] = 1
    with pytest.raises(jsonschema.ValidationError):
        validate_frame(bad)
    bad = dict(f)
    del bad["pose"]
    with pytest.raises(jsonschema.ValidationError):
        validate_frame(bad)
    bad = dict(f)
    bad["kind"] = "delta"
    with pytest.raises(jsonschema.ValidationError):
        validate_frame(bad)


def test_deltas_accumulate_to_snapshot():
    """Replaying every frame delta rebuilds exactly the snapshot's cells."""
    sim = make_sim(LOW_BOOM)
    builder = FrameBuilder(sim)
    sim.queue_event(ScriptEvent(0.0, "NOZZLE", (7,)))
    sim.queue_event(ScriptEvent(0.0, "BOOM", ("pitch", -40.0)))
    sim.queue_byte(ord("W"))
    sim.queue_byte(ord("U"))
    sim.queue_byte(ord("F"))
    sprayed, mowed = {}, set()
    for k in range(60):
        sim.tick()
        if k % 4 == 3:
            f = builder.frame()
            for i, j, dose in f["cells_sprayed"]:
                sprayed[(i, j)] = dose
            for i, j in f["cells_mowed"]:
                mowed.add((i, j))
    # final partial delta
    f = builder.frame()
    for i, j, dose in f["cells_sprayed"]:
        sprayed[(i, j)] = dose
    for i, j in f["cells_mowed"]:
        mowed.add((i, j))

    snap = builder.snapshot_frame()
    snap_sprayed = {(i, j): dose for i, j, dose in snap["cells_sprayed"]}
    snap_mowed = {(i, j) for i, j in snap["cells_mowed"]}
    assert mowed == snap_mowed
    assert set(sprayed) == set(snap_sprayed)
    for key, dose in snap_sprayed.items():
        assert sprayed[key] == pytest.approx(dose, abs=1e-15)


def test_delta_drained_once():
    sim = make_sim()
    builder = FrameBuilder(sim)
    sim.queue_byte(ord("W"))
    sim.queue_byte(ord("S"))
    for _ in range(3):
        sim.tick()
    first = builder.frame()
    assert first["cells_mowed"]
    second = builder.frame()
    assert second["cells_mowed"] == []


def test_snapshot_does_not_consume_delta():
    sim = make_sim()
    builder = FrameBuilder(sim)
    sim.queue_byte(ord("W"))
    sim.queue_byte(ord("S"))
    for _ in range(3):
        sim.tick()
    snap = builder.snapshot_frame()
    assert snap["cells_mowed"]
    assert snap["field"] == {"width_m": 10.0, "height_m": 10.0, "cell_m": 0.05}
    nxt = builder.frame()
    assert nxt["cells_mowed"] == snap["cells_mowed"]


def test_runaway_flag_passthrough():
    builder = FrameBuilder(make_sim())
    assert builder.frame()["flags"]["runaway"] is False
    builder.runaway = True
    f = builder.frame()
    assert f["flags"]["runaway"] is True
    validate_frame(f)


def test_frame_line_is_canonical_json():
    builder = FrameBuilder(make_sim())
    line = frame_line(builder.frame())
    assert "\n" not in line
    parsed = json.loads(line)
    assert line == json.dumps(parsed, sort_keys=True, separators=(",", ":"))


def test_soc_pct_scaling():
    sim = Simulation(RobotConfig(), FieldGrid(10, 10, 0.05),
                     RunOptions(soc0_ah=2.25))
    f = FrameBuilder(sim).frame()
    assert f["soc_pct"] == pytest.approx(50.0)
    assert f["soc_ah"] == pytest.approx(2.25)
