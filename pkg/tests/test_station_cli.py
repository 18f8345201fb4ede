import json
import os

import pytest

from agrisim.station.cli import main
from agrisim.telemetry import validate_frame

FORWARD = "0 SEND F\n1.0 SEND S\n2.0 END\n"


def run_cli(*argv):
    return main(list(argv))


def test_calc_backup_prototype(capsys):
    assert run_cli("calc", "backup", "4.5", "0.62") == 0
    out = capsys.readouterr().out
    assert "7.258" in out
    assert "reference: 7.25 h" in out
    assert "% of reference" in out


def test_calc_backup_conceptual(capsys):
    assert run_cli("calc", "backup", "4.5", "1.72") == 0
    out = capsys.readouterr().out
    assert "2.616" in out
    assert "reference: 2.61 h" in out


def test_calc_charge(capsys):
    assert run_cli("calc", "charge", "4.5", "4.5") == 0
    out = capsys.readouterr().out
    assert "= 1 h" in out
    assert "reference: 1 h" in out


def test_calc_workspace(capsys):
    assert run_cli("calc", "workspace", "12.5", "32.6") == 0
    out = capsys.readouterr().out
    assert "2847.9 sq in" in out
    assert "reference: 2840 sq in" in out
    assert "+0.28%" in out


def test_calc_cone_documents_discrepancy(capsys):
    assert run_cli("calc", "cone", "5", "20.6") == 0
    out = capsys.readouterr().out
    assert "402.12 sq in" in out
    assert "411.11 / 411.58 sq in" in out  # known-bad reference, shown as-is
    assert "-2.19%" in out


def test_calc_mower(capsys):
    assert run_cli("calc", "mower", "0.31") == 0
    out = capsys.readouterr().out
    assert "0.3019 sq m" in out
    assert "468" in out


def test_calc_no_reference_for_other_inputs(capsys):
    assert run_cli("calc", "backup", "9.0", "1.0") == 0
    out = capsys.readouterr().out
    assert "= 9 h" in out
    assert "reference" not in out


def test_calc_wrong_arity(capsys):
    assert run_cli("calc", "backup", "4.5") == 2
    err = capsys.readouterr().err
    assert "capacity_ah draw_a" in err


def test_calc_domain_error(capsys):
    assert run_cli("calc", "backup", "4.5", "0") == 2
    assert "zero draw" in capsys.readouterr().err


def test_run_writes_artifacts(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text(FORWARD)
    out_dir = tmp_path / "out"
    rc = run_cli("run", "--script", str(script), "--field", "6x4",
                 "--out", str(out_dir))
    assert rc == 0
    stdout = capsys.readouterr().out
    report_line = [ln for ln in stdout.splitlines() if ln.startswith("{")][0]
    report = json.loads(report_line)
    assert report["schema"] == "agrisim.report/1"
    assert report["distance_m"] == pytest.approx(1.43, abs=1e-6)
    assert report["setup"]["field_width_m"] == 6.0
    for name in ("report.json", "telemetry.ndjson", "spray.pgm",
                 "mowed.pgm", "spray.csv"):
        assert (out_dir / name).exists(), name
    on_disk = json.loads((out_dir / "report.json").read_text())
    assert on_disk == report
    lines = (out_dir / "telemetry.ndjson").read_text().splitlines()
    assert lines
    for line in lines:
        validate_frame(json.loads(line))


def test_run_without_out_prints_only(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("1 END\n")
    assert run_cli("run", "--script", str(script)) == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ticks"] == 20
    assert os.listdir(tmp_path) == ["m.txt"]


def test_run_missing_script(tmp_path, capsys):
    assert run_cli("run", "--script", str(tmp_path / "nope.txt")) == 2
    assert "not found" in capsys.readouterr().err


def test_run_bad_script_line_numbered(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("0 SEND F\n0 WIBBLE 3\n1 END\n")
    assert run_cli("run", "--script", str(script)) == 2
    err = capsys.readouterr().err
    assert "bad.txt:2" in err


def test_run_bad_config_line_numbered(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("1 END\n")
    cfg = tmp_path / "robot.cfg"
    cfg.write_text("v_max_mps = 1.5\nwheels = 6\n")
    rc = run_cli("run", "--script", str(script), "--config", str(cfg))
    assert rc == 2
    assert "robot.cfg:2" in capsys.readouterr().err


def test_run_config_preset_applies(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("0 SEND F\n1.0 SEND S\n2 END\n")
    cfg = tmp_path / "robot.cfg"
    cfg.write_text("preset = small_battery\nv_max_mps = 1.0\n")
    rc = run_cli("run", "--script", str(script), "--config", str(cfg))
    assert rc == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["distance_m"] == pytest.approx(1.0, abs=1e-9)
    assert report["final_soc_ah"] <= 1.3


def test_run_speed_needs_corrected_mode(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("0 SPEED 128\n1 END\n")
    assert run_cli("run", "--script", str(script)) == 2
    assert "CORRECTED" in capsys.readouterr().err
    assert run_cli("run", "--script", str(script), "--mode", "corrected") == 0


def test_run_bad_field_and_start(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("1 END\n")
    assert run_cli("run", "--script", str(script), "--field", "five") == 2
    assert "--field" in capsys.readouterr().err
    assert run_cli("run", "--script", str(script), "--start", "1,2") == 2
    assert "--start" in capsys.readouterr().err


def test_run_start_pose_heading_degrees(tmp_path, capsys):
    script = tmp_path / "m.txt"
    script.write_text("0 SEND F\n1.0 SEND S\n2 END\n")
    rc = run_cli("run", "--script", str(script), "--start", "1,1,90")
    assert rc == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["setup"]["start_heading"] == pytest.approx(1.5707963, abs=1e-6)


def test_run_validation_failure_writes_nothing(tmp_path, capsys):
    script = tmp_path / "bad.txt"
    script.write_text("0 SEND F\n")  # missing END
    out_dir = tmp_path / "out"
    rc = run_cli("run", "--script", str(script), "--out", str(out_dir))
    assert rc == 2
    assert not out_dir.exists()


def _capture_served_app(monkeypatch):
    import uvicorn

    captured = {}

    def fake_run(app, **kwargs):
        captured["app"] = app
        captured["kwargs"] = kwargs

    monkeypatch.setattr(uvicorn, "run", fake_run)
    return captured


def test_serve_manual_exposes_step(monkeypatch):
    captured = _capture_served_app(monkeypatch)
    assert run_cli("serve", "--manual", "--port", "8899") == 0
    paths = {route.path for route in captured["app"].routes}
    assert "/step" in paths
    assert captured["kwargs"]["port"] == 8899


def test_serve_paced_has_no_step(monkeypatch):
    captured = _capture_served_app(monkeypatch)
    assert run_cli("serve", "--port", "8899") == 0
    paths = {route.path for route in captured["app"].routes}
    assert "/step" not in paths
