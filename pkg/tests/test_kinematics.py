import math

import pytest
from hypothesis import given, settings, strategies as st

from agrisim.geometry import Pose2D
from agrisim.kinematics import (Direction, DriveState, MotorChannelState,
                                advance_arc, body_twist, integrate_pose,
                                side_speeds)

F, B, R = Direction.FORWARD, Direction.BACKWARD, Direction.RELEASE


def drive(d1, d2, d3, d4, pwm=255):
    return DriveState(*(MotorChannelState(d, pwm) for d in (d1, d2, d3, d4)))


def test_signed_fraction():
    assert MotorChannelState(F, 255).signed_fraction() == 1.0
    assert MotorChannelState(B, 255).signed_fraction() == -1.0
    assert MotorChannelState(F, 128).signed_fraction() == pytest.approx(128 / 255)
    assert MotorChannelState(R, 255).signed_fraction() == 0.0
    assert MotorChannelState(F, 0).signed_fraction() == 0.0
    with pytest.raises(ValueError):
        MotorChannelState(F, 256)


def test_side_speeds_average_pairs():
    d = drive(F, B, F, F)  # left pair disagrees: averages to zero
    left, right = side_speeds(d, 2.0)
    assert left == pytest.approx(0.0)
    assert right == pytest.approx(2.0)


def test_body_twist_cardinal_motions():
    v_max, track = 1.43, 0.475
    v, w = body_twist(drive(F, F, F, F), v_max, track)
    assert (v, w) == (pytest.approx(1.43), pytest.approx(0.0))
    v, w = body_twist(drive(B, B, B, B), v_max, track)
    assert (v, w) == (pytest.approx(-1.43), pytest.approx(0.0))
    # left spin: left side back, right side forward, counter-clockwise
    v, w = body_twist(drive(B, B, F, F), v_max, track)
    assert v == pytest.approx(0.0)
    assert w == pytest.approx(2 * 1.43 / 0.475)
    assert w > 0
    v, w = body_twist(drive(F, F, B, B), v_max, track)
    assert w < 0


def test_swap_sides_mirrors_turns():
    v_max, track = 1.0, 0.5
    d = drive(B, B, F, F)
    _, w = body_twist(d, v_max, track)
    _, w_swapped = body_twist(d, v_max, track, swap_sides=True)
    assert w_swapped == pytest.approx(-w)


def test_integrate_straight_line():
    p = integrate_pose(Pose2D(0, 0, 0), 1.43, 0.0, 1.0)
    assert p.x == pytest.approx(1.43)
    assert p.y == pytest.approx(0.0)


def test_integrate_quarter_circle_exact():
    # v = r*w: after a quarter turn the pose is on the circle, exactly
    v, w = 1.0, math.pi / 2
    p = integrate_pose(Pose2D(0, 0, 0), v, w, 1.0)
    r = v / w
    assert p.x == pytest.approx(r, abs=1e-12)
    assert p.y == pytest.approx(r, abs=1e-12)
    assert p.heading == pytest.approx(math.pi / 2)


def test_integrate_spin_in_place():
    p = integrate_pose(Pose2D(1, 2, 0), 0.0, 1.0, 0.5)
    assert (p.x, p.y) == (1, 2)
    assert p.heading == pytest.approx(0.5)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(-3, 3), st.floats(0.01, 2),
       st.integers(2, 16))
def test_substep_invariance(v, w, dt, n):
    """One big step equals n small ones: the arc integral is exact."""
    one = integrate_pose(Pose2D(0.3, -0.2, 0.7), v, w, dt)
    p = Pose2D(0.3, -0.2, 0.7)
    for _ in range(n):
        p = integrate_pose(p, v, w, dt / n)
    assert one.x == pytest.approx(p.x, abs=1e-9)
    assert one.y == pytest.approx(p.y, abs=1e-9)
    assert math.isclose(math.cos(one.heading), math.cos(p.heading), abs_tol=1e-9)
    assert math.isclose(math.sin(one.heading), math.sin(p.heading), abs_tol=1e-9)


def test_advance_arc_matches_integrate_pose():
    got = advance_arc(0.1, 0.2, 0.3, 1.1, -0.7, 0.25)
    p = integrate_pose(Pose2D(0.1, 0.2, 0.3), 1.1, -0.7, 0.25)
    assert got == (p.x, p.y, p.heading)


def test_zero_twist_noop():
    p0 = Pose2D(5, 5, 1.0)
    assert integrate_pose(p0, 0.0, 0.0, 10.0) == p0
