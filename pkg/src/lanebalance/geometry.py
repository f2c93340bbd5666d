"""Small 2D helpers for positions, distances, and polyline walking.

Positions are plain (x, y) float tuples; everything here is pure and
allocation-light because it sits on the hot path of the tick loop.
"""

from __future__ import annotations

import math

Point = tuple[float, float]


def dist_sq(a: Point, b: Point) -> float:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def dist(a: Point, b: Point) -> float:
    return math.sqrt(dist_sq(a, b))


def within(a: Point, b: Point, radius: float) -> bool:
    return dist_sq(a, b) <= radius * radius


def step_toward(pos: Point, target: Point, max_step: float) -> Point:
    """Move from pos toward target by at most max_step, without overshoot."""
    d = dist(pos, target)
    if d <= max_step or d == 0.0:
        return target
    f = max_step / d
    return (pos[0] + (target[0] - pos[0]) * f, pos[1] + (target[1] - pos[1]) * f)


def clamp_to_bounds(pos: Point, width: float, height: float) -> Point:
    return (min(max(pos[0], 0.0), width), min(max(pos[1], 0.0), height))


def polyline_length(points: list[Point]) -> float:
    return sum(dist(points[i], points[i + 1]) for i in range(len(points) - 1))


def point_along_polyline(points: list[Point], distance: float) -> Point:
    """Point at the given arc distance from the first vertex (clamped to ends)."""
    if distance <= 0.0:
        return points[0]
    remaining = distance
    for i in range(len(points) - 1):
        seg = dist(points[i], points[i + 1])
        if remaining <= seg:
            return step_toward(points[i], points[i + 1], remaining)
        remaining -= seg
    return points[-1]
