"""Convex domain representation and cross-ratio metrics (Hilbert, Funk,
reverse Funk, Thompson).

All distances reduce to the two boundary hits of the chord through the two
query points.  Chord queries binary-search the counterclockwise vertex order
(angles around the query point are cyclically monotone for any interior
point of a convex polygon), so a single query costs O(log m) comparisons.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    CoincidentPoints,
    DuplicateVertex,
    NotConvex,
    OutsideDomain,
    PointOnBoundary,
    TooFewVertices,
)

TWO_PI = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float


class MetricKind(str, Enum):
    HILBERT = "hilbert"
    FUNK = "funk"
    REVERSE_FUNK = "reverse_funk"
    THOMPSON = "thompson"

    @property
    def symmetric(self) -> bool:
        return self in (MetricKind.HILBERT, MetricKind.THOMPSON)


class Chord(NamedTuple):
    """Boundary hits of the line through p and q, ordered a, p, q, b."""

    a: Point
    b: Point
    edge_a: int
    edge_b: int


class ConvexDomain:
    """Immutable strictly convex polygon with precomputed edge data.

    Thread-safe for concurrent reads; all metric operations are pure
    functions over this object.
    """

    __slots__ = (
        "vertices", "m", "_xs", "_ys", "_ex", "_ey", "_nx", "_ny",
        "centroid", "area", "diameter",
    )

    def __init__(self, vertices: tuple[Point, ...]):
        self.vertices = vertices
        m = len(vertices)
        self.m = m
        xs = [v.x for v in vertices]
        ys = [v.y for v in vertices]
        self._xs = xs
        self._ys = ys
        ex = [0.0] * m
        ey = [0.0] * m
        nx = [0.0] * m
        ny = [0.0] * m
        for i in range(m):
            j = (i + 1) % m
            dx = xs[j] - xs[i]
            dy = ys[j] - ys[i]
            ex[i] = dx
            ey[i] = dy
            ln = math.hypot(dx, dy)
            # inward normal of a ccw edge
            nx[i] = -dy / ln
            ny[i] = dx / ln
        self._ex = ex
        self._ey = ey
        self._nx = nx
        self._ny = ny
        a2 = 0.0
        cx = 0.0
        cy = 0.0
        for i in range(m):
            j = (i + 1) % m
            w = xs[i] * ys[j] - xs[j] * ys[i]
            a2 += w
            cx += (xs[i] + xs[j]) * w
            cy += (ys[i] + ys[j]) * w
        self.area = 0.5 * a2
        self.centroid = Point(cx / (3.0 * a2), cy / (3.0 * a2))
        self.diameter = max(
            math.hypot(xs[i] - xs[j], ys[i] - ys[j])
            for i in range(m) for j in range(i + 1, m)
        )

    # -- boundary predicates ------------------------------------------------

    def boundary_distance(self, x: float, y: float) -> float:
        """Min signed distance to the edge supporting lines (positive inside).

        A conservative lower bound on the true distance to the boundary for
        interior points, which is what the guard band needs.
        """
        xs, ys, nx, ny = self._xs, self._ys, self._nx, self._ny
        best = math.inf
        for i in range(self.m):
            d = nx[i] * (x - xs[i]) + ny[i] * (y - ys[i])
            if d < best:
                best = d
        return best

    def contains(self, p: Point, margin: float = 0.0) -> bool:
        return self.boundary_distance(p.x, p.y) > margin

    def require_interior(self, p: Point, tol: Tolerances = DEFAULT_TOL) -> None:
        d = self.boundary_distance(p.x, p.y)
        if d <= -tol.boundary_eps:
            raise OutsideDomain(f"point {p} lies outside the domain")
        if d <= tol.boundary_eps:
            raise PointOnBoundary(
                f"point {p} is within {tol.boundary_eps} of the boundary; distances diverge"
            )

    # -- ray shooting -------------------------------------------------------

    def _vertex_angle(self, i: int, px: float, py: float, base: float) -> float:
        a = math.atan2(self._ys[i] - py, self._xs[i] - px) - base
        return a % TWO_PI

    def ray_hit(self, px: float, py: float, dx: float, dy: float):
        """Exit point of the ray from interior (px,py) in direction (dx,dy).

        Returns (hx, hy, edge_index, t) with the hit at (px+t*dx, py+t*dy).
        O(log m): binary search on the vertex angles around the ray origin.
        """
        base = math.atan2(self._ys[0] - py, self._xs[0] - px)
        delta = (math.atan2(dy, dx) - base) % TWO_PI
        # largest i in [0, m-1] with angle(v_i) <= delta (angle(v_0) == 0)
        lo, hi = 0, self.m  # invariant: angle(v_lo) <= delta < angle(v_hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._vertex_angle(mid, px, py, base) <= delta:
                lo = mid
            else:
                hi = mid
        i = lo
        ex = self._ex[i]
        ey = self._ey[i]
        den = dx * ey - dy * ex
        wx = self._xs[i] - px
        wy = self._ys[i] - py
        t = (wx * ey - wy * ex) / den
        return px + t * dx, py + t * dy, i, t

    def ray_hit_scan(self, px: float, py: float, dx: float, dy: float):
        """O(m) reference: test the ray against every edge segment."""
        best = None
        for i in range(self.m):
            ex = self._ex[i]
            ey = self._ey[i]
            den = dx * ey - dy * ex
            if den == 0.0:
                continue
            wx = self._xs[i] - px
            wy = self._ys[i] - py
            t = (wx * ey - wy * ex) / den
            s = (wx * dy - wy * dx) / den
            if t > 0.0 and -1e-12 <= s <= 1.0 + 1e-12:
                if best is None or t < best[3]:
                    best = (px + t * dx, py + t * dy, i, t)
        if best is None:
            raise OutsideDomain("ray origin is not interior")
        return best

    # -- serialization helpers ---------------------------------------------

    def vertex_list(self) -> list[list[float]]:
        return [[v.x, v.y] for v in self.vertices]


def build_domain(vertices) -> ConvexDomain:
    """Validate and build a convex domain from ccw or cw vertex input.

    Rejects fewer than 3 vertices, duplicate vertices, collinear triples and
    non-convex chains; clockwise input is reversed to counterclockwise.
    """
    pts = [Point(float(x), float(y)) for x, y in vertices]
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")
    for p in pts:
        if not (math.isfinite(p.x) and math.isfinite(p.y)):
            raise NotConvex("vertex coordinates must be finite")
    scale = max(max(abs(p.x), abs(p.y)) for p in pts) or 1.0
    eps = 1e-12 * scale
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i].x - pts[j].x) <= eps and abs(pts[i].y - pts[j].y) <= eps:
                raise DuplicateVertex(f"vertices {i} and {j} coincide")
    cross_sign = 0
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        ux, uy = b.x - a.x, b.y - a.y
        vx, vy = c.x - b.x, c.y - b.y
        cr = ux * vy - uy * vx
        if abs(cr) <= 1e-12 * math.hypot(ux, uy) * math.hypot(vx, vy):
            raise NotConvex(f"collinear triple at vertices {i},{i + 1},{i + 2}")
        s = 1 if cr > 0 else -1
        if cross_sign == 0:
            cross_sign = s
        elif s != cross_sign:
            raise NotConvex("vertex chain is not convex")
    if cross_sign < 0:
        pts.reverse()
    # total turning must be one full revolution, else the chain self-intersects
    turn = 0.0
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        u = (b.x - a.x, b.y - a.y)
        v = (c.x - b.x, c.y - b.y)
        turn += math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])
    if abs(turn - TWO_PI) > 1e-6:
        raise NotConvex("vertex chain winds more than once (self-intersecting)")
    return ConvexDomain(tuple(pts))


def chord_through(domain: ConvexDomain, p: Point, q: Point,
                  tol: Tolerances = DEFAULT_TOL) -> Chord:
    """Boundary hits of line pq, ordered so that walking meets a, p, q, b."""
    domain.require_interior(p, tol)
    domain.require_interior(q, tol)
    dx = q.x - p.x
    dy = q.y - p.y
    if math.hypot(dx, dy) <= tol.boundary_eps:
        raise CoincidentPoints(f"points {p} and {q} coincide")
    bx, by, eb, _ = domain.ray_hit(p.x, p.y, dx, dy)
    ax, ay, ea, _ = domain.ray_hit(p.x, p.y, -dx, -dy)
    return Chord(Point(ax, ay), Point(bx, by), ea, eb)


def chord_through_scan(domain: ConvexDomain, p: Point, q: Point,
                       tol: Tolerances = DEFAULT_TOL) -> Chord:
    """Brute-force O(m) chord oracle: edge-by-edge intersection."""
    domain.require_interior(p, tol)
    domain.require_interior(q, tol)
    dx = q.x - p.x
    dy = q.y - p.y
    if math.hypot(dx, dy) <= tol.boundary_eps:
        raise CoincidentPoints(f"points {p} and {q} coincide")
    bx, by, eb, _ = domain.ray_hit_scan(p.x, p.y, dx, dy)
    ax, ay, ea, _ = domain.ray_hit_scan(p.x, p.y, -dx, -dy)
    return Chord(Point(ax, ay), Point(bx, by), ea, eb)


def _funk_parts(domain: ConvexDomain, px: float, py: float,
                qx: float, qy: float) -> tuple[float, float]:
    """(F(p,q), F(q,p)) from the chord's ray parameters; no validation.

    With the line x(t) = p + t*(q-p), the boundary hits sit at t_b > 1
    (beyond q) and -t_a < 0 (behind p), and the segment-length ratios in the
    cross-ratio reduce to ratios of these parameters.
    """
    dx = qx - px
    dy = qy - py
    _, _, _, tb = domain.ray_hit(px, py, dx, dy)
    _, _, _, ta = domain.ray_hit(px, py, -dx, -dy)
    if tb <= 1.0 or ta <= 0.0:
        # q at or past the forward hit, or p at the backward hit: a log
        # argument degenerates and the distance is +inf or undefined
        raise PointOnBoundary(
            f"chord through ({px}, {py}) and ({qx}, {qy}) has an endpoint "
            "on the boundary")
    return math.log(tb / (tb - 1.0)), math.log((1.0 + ta) / ta)


def _combine(metric: MetricKind, f_pq: float, f_qp: float) -> float:
    if metric is MetricKind.HILBERT:
        return 0.5 * (f_pq + f_qp)
    if metric is MetricKind.FUNK:
        return f_pq
    if metric is MetricKind.REVERSE_FUNK:
        return f_qp
    return f_pq if f_pq > f_qp else f_qp  # Thompson


def distance(domain: ConvexDomain, metric: MetricKind, p: Point, q: Point,
             tol: Tolerances = DEFAULT_TOL) -> float:
    """Metric distance between strictly interior points.

    Funk F(p,q) = ln(|pb|/|qb|); reverse Funk is F(q,p); Hilbert is the
    average of the two and Thompson the max.
    """
    domain.require_interior(p, tol)
    domain.require_interior(q, tol)
    if p.x == q.x and p.y == q.y:
        return 0.0
    f_pq, f_qp = _funk_parts(domain, p.x, p.y, q.x, q.y)
    return _combine(metric, f_pq, f_qp)


def distance_unchecked(domain: ConvexDomain, metric: MetricKind,
                       px: float, py: float, qx: float, qy: float) -> float:
    """Hot-path distance without interior validation (callers guarantee it)."""
    if px == qx and py == qy:
        return 0.0
    f_pq, f_qp = _funk_parts(domain, px, py, qx, qy)
    return _combine(metric, f_pq, f_qp)
