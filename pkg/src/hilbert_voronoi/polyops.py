"""Plain polygon utilities: areas, containment, half-plane clipping, kernels.

Polygons are lists of (x, y) tuples in ccw order unless stated otherwise.
"""

from __future__ import annotations

import math

from .errors import SelfIntersectingInput


def signed_area(poly) -> float:
    n = len(poly)
    if n < 3:
        return 0.0
    a = 0.0
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        a += x1 * y2 - x2 * y1
    return 0.5 * a


def polygon_area(poly) -> float:
    return abs(signed_area(poly))


def ensure_ccw(poly):
    return list(poly) if signed_area(poly) >= 0.0 else list(reversed(poly))


def centroid(poly):
    a2 = 0.0
    cx = 0.0
    cy = 0.0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        a2 += w
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    if a2 == 0.0:
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        return (sum(xs) / len(poly), sum(ys) / len(poly))
    return (cx / (3.0 * a2), cy / (3.0 * a2))


def point_in_convex(poly, x: float, y: float, tol: float = 0.0) -> bool:
    """Containment in a ccw convex polygon, boundary band of width tol included."""
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        ex, ey = x2 - x1, y2 - y1
        cr = ex * (y - y1) - ey * (x - x1)
        ln = math.hypot(ex, ey)
        if ln > 0.0 and cr < -tol * ln:
            return False
    return True


def clip_halfplane(poly, ax: float, ay: float, nx: float, ny: float):
    """Clip a polygon to the half-plane n . (p - a) >= 0 (Sutherland-Hodgman)."""
    out = []
    n = len(poly)
    if n == 0:
        return out
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        d1 = nx * (x1 - ax) + ny * (y1 - ay)
        d2 = nx * (x2 - ax) + ny * (y2 - ay)
        if d1 >= 0.0:
            out.append((x1, y1))
        if (d1 > 0.0 > d2) or (d1 < 0.0 < d2):
            t = d1 / (d1 - d2)
            out.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
    return out


def convex_intersection(a, b):
    """Intersection of two convex polygons (ccw); may be empty."""
    out = ensure_ccw(a)
    cb = ensure_ccw(b)
    n = len(cb)
    for i in range(n):
        if not out:
            return []
        x1, y1 = cb[i]
        x2, y2 = cb[(i + 1) % n]
        # inward normal of ccw edge
        out = clip_halfplane(out, x1, y1, -(y2 - y1), x2 - x1)
    return dedupe(out)


def dedupe(poly, eps: float = 0.0):
    """Drop consecutive duplicate vertices (closing vertex included)."""
    if not poly:
        return []
    if eps == 0.0:
        scale = max(max(abs(x), abs(y)) for x, y in poly) or 1.0
        eps = 1e-12 * scale
    out = []
    for p in poly:
        if not out or math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > eps:
            out.append((p[0], p[1]))
    while len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= eps:
        out.pop()
    return out


def is_simple(poly) -> bool:
    """O(n^2) segment-crossing test; shared endpoints of neighbors allowed."""
    n = len(poly)
    if n < 3:
        return False

    def seg(i):
        return poly[i], poly[(i + 1) % n]

    def crosses(p1, p2, p3, p4):
        def orient(a, b, c):
            v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if v > 1e-14:
                return 1
            if v < -1e-14:
                return -1
            return 0

        o1 = orient(p1, p2, p3)
        o2 = orient(p1, p2, p4)
        o3 = orient(p3, p4, p1)
        o4 = orient(p3, p4, p2)
        return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)

    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if crosses(*seg(i), *seg(j)):
                return False
    return True


def kernel(poly, require_simple: bool = True):
    """Kernel of a simple polygon: intersection of all inner edge half-planes.

    Returns a convex polygon (possibly empty list).  The sweep starts from
    the polygon's bounding box, so the result is clamped to the polygon's
    extent.
    """
    pts = dedupe(list(poly))
    if len(pts) < 3:
        return []
    if require_simple and not is_simple(pts):
        raise SelfIntersectingInput("kernel is undefined for self-intersecting input")
    pts = ensure_ccw(pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 1e-9 * (max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0)
    ker = [
        (min(xs) - pad, min(ys) - pad),
        (max(xs) + pad, min(ys) - pad),
        (max(xs) + pad, max(ys) + pad),
        (min(xs) - pad, max(ys) + pad),
    ]
    n = len(pts)
    for i in range(n):
        if not ker:
            return []
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        ex, ey = x2 - x1, y2 - y1
        ln = math.hypot(ex, ey)
        if ln == 0.0:
            continue
        ker = clip_halfplane(ker, x1, y1, -ey / ln, ex / ln)
    return dedupe(ker)
