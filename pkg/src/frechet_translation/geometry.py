"""Planar primitives: points, circles, and tolerance-aware predicates.

Everything downstream (free-space matrices, disk arrangements, critical
radii) funnels its floating-point comparisons through a single
:class:`Tolerance`, so the comparison policy lives in one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Point2",
    "Circle",
    "Tolerance",
    "DEFAULT_TOL",
    "CollinearPoints",
    "IdenticalCircles",
    "ZeroRadius",
    "dist",
    "circle_circle_intersections",
    "circumradius",
    "point_in_closed_disk",
    "rightmost_point",
]


class CollinearPoints(ValueError):
    """Three points admit no circumcircle."""


class IdenticalCircles(ValueError):
    """Two circles coincide within tolerance; intersection is ill-defined."""


class ZeroRadius(ValueError):
    """Operation requires a circle of positive radius."""


@dataclass(frozen=True)
class Point2:
    """A point (or translation vector) in the plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Circle:
    """A circle given by center and nonnegative radius."""

    center: Point2
    radius: float

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"radius must be finite and >= 0, got {self.radius}")


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance used by every geometric predicate."""

    eps: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.eps

    def leq(self, a: float, b: float) -> bool:
        return a <= b + self.eps

    def points_close(self, a: Point2, b: Point2) -> bool:
        return dist(a, b) <= self.eps


DEFAULT_TOL = Tolerance()


def dist(a: Point2, b: Point2) -> float:
    """Euclidean distance between two points."""
    return math.hypot(a.x - b.x, a.y - b.y)


def circle_circle_intersections(
    c1: Circle, c2: Circle, tol: Tolerance = DEFAULT_TOL
) -> list[Point2]:
    """Intersection points of two circle boundaries.

    Returns two points for proper crossings, exactly one point for a
    tangency (within ``tol``), and an empty list for disjoint or strictly
    nested circles.  Raises :class:`IdenticalCircles` when the circles
    coincide within tolerance.
    """
    d = dist(c1.center, c2.center)
    r1, r2 = c1.radius, c2.radius
    if d <= tol.eps and abs(r1 - r2) <= tol.eps:
        raise IdenticalCircles(f"circles coincide within eps={tol.eps}")
    if d <= tol.eps:
        # concentric with distinct radii
        return []
    ux = (c2.center.x - c1.center.x) / d
    uy = (c2.center.y - c1.center.y) / d
    tangent = abs(d - (r1 + r2)) <= tol.eps or abs(d - abs(r1 - r2)) <= tol.eps
    if not tangent and (d > r1 + r2 or d < abs(r1 - r2)):
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    if tangent:
        return [Point2(c1.center.x + a * ux, c1.center.y + a * uy)]
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    mx = c1.center.x + a * ux
    my = c1.center.y + a * uy
    return [
        Point2(mx + h * uy, my - h * ux),
        Point2(mx - h * uy, my + h * ux),
    ]


def circumradius(a: Point2, b: Point2, c: Point2, tol: Tolerance = DEFAULT_TOL) -> float:
    """Radius of the unique circle through three points.

    Raises :class:`CollinearPoints` when the points are collinear within
    tolerance (this includes coincident points).
    """
    dab = dist(a, b)
    dbc = dist(b, c)
    dca = dist(c, a)
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    scale = dab * dca
    if scale <= tol.eps or abs(cross) <= tol.eps * scale:
        raise CollinearPoints("points are collinear within tolerance")
    return (dab * dbc * dca) / (2.0 * abs(cross))


def point_in_closed_disk(t: Point2, d: Circle, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether ``t`` lies in the closed disk bounded by ``d`` (within eps)."""
    return dist(t, d.center) <= d.radius + tol.eps


def rightmost_point(c: Circle) -> Point2:
    """The point of maximal x on the circle boundary."""
    if c.radius <= 0.0:
        raise ZeroRadius("rightmost point needs a positive radius")
    return Point2(c.center.x + c.radius, c.center.y)
