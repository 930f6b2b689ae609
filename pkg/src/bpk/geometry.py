"""Exact rational predicates for segments and polylines."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Point = tuple[Fraction, Fraction]
Number = Union[int, str, Fraction]


def frac(x: Number) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not accepted; use 'p/q' strings")
    return Fraction(x)


def point(p: Sequence[Number]) -> Point:
    return (frac(p[0]), frac(p[1]))


def orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """``p`` lies on the closed segment ``ab``."""
    return (
        orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Collinear segments sharing more than a single point."""
    if orient(a, b, c) != 0 or orient(a, b, d) != 0:
        return False
    key = 0 if a[0] != b[0] else 1
    lo1, hi1 = sorted((a[key], b[key]))
    lo2, hi2 = sorted((c[key], d[key]))
    return min(hi1, hi2) > max(lo1, lo2)


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> tuple[Fraction, Fraction, Point] | None:
    """Unique intersection point of two non-parallel closed segments.

    Returns ``(s, t, p)`` with ``p = a + s(b-a) = c + t(d-c)`` and both
    parameters in ``[0, 1]``, or ``None`` when they miss or are parallel.
    """
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    if den == 0:
        return None
    qx, qy = c[0] - a[0], c[1] - a[1]
    s = (qx * sy - qy * sx) / den
    t = (qx * ry - qy * rx) / den
    if not (0 <= s <= 1 and 0 <= t <= 1):
        return None
    return s, t, (a[0] + s * rx, a[1] + s * ry)


def proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Orientation-only test: the open segments cross at one interior point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def circle_point(u: Number) -> Point:
    """Rational point on the unit circle via the tangent half-angle map."""
    u = frac(u)
    den = 1 + u * u
    return ((1 - u * u) / den, 2 * u / den)


def fmt(x: Fraction) -> str:
    return str(x)
