import dataclasses

import pytest

from agrisim.config import (PRESETS, ConfigError, CurrentDraws, RobotConfig,
                            load_config, parse_config_text)


def test_defaults_are_valid_and_consistent():
    cfg = RobotConfig()
    assert cfg.vertical_travel_in == pytest.approx(10.0)
    assert cfg.horizontal_travel_in == pytest.approx(20.1)
    assert cfg.blade_sweep_radius_in == pytest.approx(0.31 / 0.0254)
    assert cfg.current_draws.pump_a == 0.3


def test_validation_rejects_bad_values():
    with pytest.raises(ValueError):
        RobotConfig(v_max_mps=0.0)
    with pytest.raises(ValueError):
        RobotConfig(nozzle_height_min_in=60.0)  # min above max
    with pytest.raises(ValueError):
        RobotConfig(spray_half_angle_deg=90.0)
    with pytest.raises(ValueError):
        RobotConfig(boom_rate_in_per_s=0.0)
    with pytest.raises(ValueError):
        CurrentDraws(pump_a=-0.1)


def test_presets_apply_cleanly():
    for name, overrides in PRESETS.items():
        cfg = RobotConfig(**overrides)
        for k, v in overrides.items():
            assert getattr(cfg, k) == v, name


def test_parse_happy_path():
    cfg = parse_config_text(
        """
        # test rig
        v_max_mps = 1.0
        swap_motor_sides = true
        current_draws.pump_a = 0.4
        boom_rate_in_per_s = none
        """)
    assert cfg.v_max_mps == 1.0
    assert cfg.swap_motor_sides is True
    assert cfg.current_draws.pump_a == 0.4
    assert cfg.current_draws.mower_a == 0.06  # untouched default
    assert cfg.boom_rate_in_per_s is None


def test_parse_preset_then_override():
    cfg = parse_config_text("preset = small_battery\n")
    assert cfg.battery_capacity_ah == 1.3
    cfg = parse_config_text("preset = small_battery\nbattery_capacity_ah = 2.0\n")
    assert cfg.battery_capacity_ah == 2.0  # explicit key wins over preset


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match=r"cfg:2"):
        parse_config_text("v_max_mps = 1\nnot a line\n", source="cfg")
    with pytest.raises(ConfigError, match=r"cfg:1.*unknown key"):
        parse_config_text("wheel_count = 4\n", source="cfg")
    with pytest.raises(ConfigError, match=r"cfg:1.*number"):
        parse_config_text("v_max_mps = fast\n", source="cfg")
    with pytest.raises(ConfigError, match=r"unknown preset"):
        parse_config_text("preset = hover\n", source="cfg")
    with pytest.raises(ConfigError, match=r"cfg:1"):
        parse_config_text("current_draws.warp_a = 1\n", source="cfg")
    # semantic failure still names the source
    with pytest.raises(ConfigError, match=r"cfg"):
        parse_config_text("v_max_mps = -3\n", source="cfg")


def test_load_config_reads_file(tmp_path):
    p = tmp_path / "robot.cfg"
    p.write_text("pump_flow_l_min = 2.0\n")
    assert load_config(str(p)).pump_flow_l_min == 2.0


def test_replace_returns_new_config():
    cfg = RobotConfig()
    cfg2 = cfg.replace(v_max_mps=2.0)
    assert cfg2.v_max_mps == 2.0 and cfg.v_max_mps == 1.43
    assert dataclasses.is_dataclass(cfg2)
