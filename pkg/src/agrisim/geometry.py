"""Planar pose and heading arithmetic."""

import math
from dataclasses import dataclass


def normalize_heading(h: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    r = math.fmod(h + math.pi, math.tau)
    if r <= 0.0:
        r += math.tau
    return r - math.pi


@dataclass(frozen=True)
class Pose2D:
    """Robot pose in the field frame: position in meters, heading in radians.

    The heading is normalized to (-pi, pi] on construction, so any operation
    that builds a new pose yields a normalized one.
    """

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "heading", normalize_heading(self.heading))

    def distance_to(self, other: "Pose2D") -> float:
        return math.hypot(other.x - self.x, other.y - self.y)
