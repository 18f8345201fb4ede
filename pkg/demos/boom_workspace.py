"""
Where the nozzles can reach: the boom's workspace
=================================================

Two nozzles ride a T-bar on a telescoping mast. Four axes position them:
vertical extension (10 in of travel), horizontal extension (20.1 in), yaw of
the whole bar, and nozzle pitch. Seen from above, the reachable nozzle
positions form a half annulus per side; pitching the nozzles converts arm
length into extra effective height. This demo maps the workspace with
numpy and prints the headline geometry numbers.

Run it directly: ``python3 demos/boom_workspace.py``
"""

import math

import numpy as np

from agrisim import (
    BoomState,
    Pose2D,
    RobotConfig,
    Side,
    annulus_area,
    clamp_boom,
    nozzle_pose,
    pitch_height_gain,
)
from agrisim.units import m_to_in

cfg = RobotConfig()
robot = Pose2D(0.0, 0.0, 0.0)

# ---------------------------------------------------------------------------
# 1. Vertical travel: retracted to extended.
# ---------------------------------------------------------------------------
lo = nozzle_pose(robot, BoomState(), cfg, Side.LEFT)
hi = nozzle_pose(robot, BoomState(vertical_ext_in=cfg.vertical_travel_in),
                 cfg, Side.LEFT)
print(f"nozzle height: {m_to_in(lo.z):.1f} in retracted, "
      f"{m_to_in(hi.z):.1f} in extended ({cfg.vertical_travel_in:.1f} in travel)")

# ---------------------------------------------------------------------------
# 2. Horizontal reach sweeps an annulus (per side, a half annulus bounded
#    by the +/-90 degree yaw limit). Its area comes out near 20 in x the
#    mean circumference.
# ---------------------------------------------------------------------------
r0, r1 = cfg.nozzle_reach_min_in, cfg.nozzle_reach_max_in
area = annulus_area(r0, r1)
print(f"reach ring: {r0} in to {r1} in -> full annulus {area:.1f} in^2, "
      f"half (one side) {area / 2:.1f} in^2")

# Map it: sweep yaw and extension on a grid and collect ground positions
# of the LEFT nozzle. The radial span of the cloud matches the ring bounds.
yaws = np.linspace(-cfg.boom_yaw_limit_deg, cfg.boom_yaw_limit_deg, 61)
exts = np.linspace(0.0, cfg.horizontal_travel_in, 21)
pts = np.array([
    (p.x, p.y)
    for yaw in yaws for ext in exts
    for p in [nozzle_pose(robot, BoomState(horizontal_ext_in=ext, yaw_deg=yaw),
                          cfg, Side.LEFT)]
])
radii_in = m_to_in(np.hypot(pts[:, 0], pts[:, 1]))
print(f"sampled {len(pts)} poses: radius spans "
      f"{radii_in.min():.1f}..{radii_in.max():.1f} in "
      f"(expected {r0}..{r1}), all at y >= 0: {bool((pts[:, 1] >= -1e-12).all())}")

# ---------------------------------------------------------------------------
# 3. Pitch trades arm length for height. With the nozzle offset 5 in from
#    the pivot on a 20 in arm, pitching 60 degrees gains 17.85 in of height.
# ---------------------------------------------------------------------------
gain = pitch_height_gain(5.0, 20.0, 60.0)
print(f"\npitch gain (5 in offset, 20 in arm, 60 deg): {gain:.2f} in")
print("angle sweep:", ", ".join(
    f"{a:.0f}deg->{pitch_height_gain(5.0, 20.0, a):.1f}in"
    for a in (0.0, 15.0, 30.0, 45.0, 60.0, 90.0)))

# ---------------------------------------------------------------------------
# 4. Axis limits are enforced, not assumed: out-of-range set-points clamp
#    and the report says which fields were touched.
# ---------------------------------------------------------------------------
wild = BoomState(vertical_ext_in=99.0, yaw_deg=500.0, pitch_deg=-10.0)
clamped, touched = clamp_boom(wild, cfg)
print(f"\nclamp {wild.vertical_ext_in=} {wild.yaw_deg=} -> "
      f"vertical {clamped.vertical_ext_in}, yaw {clamped.yaw_deg}; "
      f"touched fields: {touched}")

# ---------------------------------------------------------------------------
# 5. The yaw convention: the bar is perpendicular to the chassis at yaw 0,
#    one nozzle per side. Positive yaw swings the LEFT nozzle toward the
#    nose; the RIGHT nozzle mirrors it.
# ---------------------------------------------------------------------------
for yaw in (0.0, 45.0):
    left = nozzle_pose(robot, BoomState(yaw_deg=yaw), cfg, Side.LEFT)
    right = nozzle_pose(robot, BoomState(yaw_deg=yaw), cfg, Side.RIGHT)
    print(f"yaw {yaw:5.1f}: left nozzle at ({left.x:+.3f}, {left.y:+.3f}) m, "
          f"right at ({right.x:+.3f}, {right.y:+.3f}) m, bearing "
          f"{math.degrees(math.atan2(left.y, left.x)):+.1f} deg")
