"""Exact planar predicates on rational convex polygons."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Point2 = tuple[Fraction, Fraction]


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def signed_area(poly: Sequence[Point2]) -> Fraction:
    total = Fraction(0)
    n = len(poly)
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        total += x0 * y1 - x1 * y0
    return total / 2


def area(poly: Sequence[Point2]) -> Fraction:
    return abs(signed_area(poly))


def ccw(poly: Sequence[Point2]) -> list[Point2]:
    pts = list(poly)
    return pts if signed_area(pts) >= 0 else pts[::-1]


def is_convex(poly: Sequence[Point2]) -> bool:
    pts = ccw(poly)
    n = len(pts)
    return all(cross(pts[k], pts[(k + 1) % n], pts[(k + 2) % n]) >= 0 for k in range(n))


def clip_convex(subject: Sequence[Point2], clipper: Sequence[Point2]) -> list[Point2]:
    """Sutherland-Hodgman clip of ``subject`` by convex ``clipper`` (both CCW).

    The result may contain repeated or collinear vertices; only its area
    and centroid are meaningful.
    """
    out = list(subject)
    n = len(clipper)
    for k in range(n):
        a, b = clipper[k], clipper[(k + 1) % n]
        if not out:
            break
        inp, out = out, []
        for idx, cur in enumerate(inp):
            prev = inp[idx - 1]
            c_cur, c_prev = cross(a, b, cur), cross(a, b, prev)
            if c_cur >= 0:
                if c_prev < 0:
                    out.append(_intersect(prev, cur, c_prev, c_cur))
                out.append(cur)
            elif c_prev >= 0:
                out.append(_intersect(prev, cur, c_prev, c_cur))
    return out


def _intersect(p: Point2, q: Point2, cp: Fraction, cq: Fraction) -> Point2:
    t = cp / (cp - cq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def centroid(poly: Sequence[Point2]) -> Point2:
    """Area centroid of a polygon with nonzero area."""
    a6 = Fraction(0)
    cx = cy = Fraction(0)
    n = len(poly)
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        w = x0 * y1 - x1 * y0
        a6 += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    a6 *= 3
    return (cx / a6, cy / a6)


def interior_overlap(p: Sequence[Point2], q: Sequence[Point2]) -> Point2 | None:
    """A point interior to both convex polygons, or None if interiors are disjoint."""
    piece = clip_convex(ccw(p), ccw(q))
    if len(piece) < 3 or signed_area(piece) <= 0:
        return None
    return centroid(piece)


def point_on_segment(pt: Point2, a: Point2, b: Point2) -> bool:
    if cross(a, b, pt) != 0:
        return False
    return (min(a[0], b[0]) <= pt[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= pt[1] <= max(a[1], b[1]))


def segment_on_boundary(a: Point2, b: Point2, poly: Sequence[Point2]) -> bool:
    """True if segment ab lies within a single edge of ``poly``."""
    n = len(poly)
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        if point_on_segment(a, p, q) and point_on_segment(b, p, q):
            return True
    return False


def shared_boundary_length2(p: Sequence[Point2], q: Sequence[Point2]) -> Fraction:
    """Largest squared length of a collinear overlap between an edge of p and an edge of q."""
    best = Fraction(0)
    for k in range(len(p)):
        a, b = p[k], p[(k + 1) % len(p)]
        for l in range(len(q)):
            c, d = q[l], q[(l + 1) % len(q)]
            if cross(a, b, c) != 0 or cross(a, b, d) != 0:
                continue
            # project onto the dominant axis of ab
            ax = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
            lo = max(min(a[ax], b[ax]), min(c[ax], d[ax]))
            hi = min(max(a[ax], b[ax]), max(c[ax], d[ax]))
            if hi > lo:
                dx, dy = b[0] - a[0], b[1] - a[1]
                scale = (dx * dx + dy * dy) / ((b[ax] - a[ax]) ** 2)
                best = max(best, (hi - lo) ** 2 * scale)
    return best
