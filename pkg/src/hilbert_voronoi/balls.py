"""Metric balls, which are convex polygons in polygonal Hilbert-type
geometry, and the two limit balls along a bisector.

Within each angular sector delimited by the spokes through the center and
the domain vertices, the chord through the center has fixed boundary edges,
so the ball boundary is a straight segment there.  The radius equation
inverts in closed form: with beta the boundary distance along the ray and
alpha against it,

    Funk          s = beta * (1 - exp(-r))
    reverse Funk  s = alpha * (exp(r) - 1)
    Hilbert       s = alpha*beta*(R - 1) / (beta + R*alpha),  R = exp(2r)
    Thompson      s = min(Funk s, reverse Funk s)

Since beta and alpha scale with the domain itself along each spoke, the
Funk sphere is the domain shrunk about the center by 1 - exp(-r) and the
reverse-Funk sphere is the domain point-reflected and scaled by exp(r) - 1,
so both come straight from the domain vertices.  The Thompson sphere is
their intersection, the Hilbert sphere has its vertices on the spokes.

A reverse-Funk sphere of large radius extends past the domain: the
reverse-Funk distance stays finite toward the boundary, so the sublevel
set meets it.  All other metrics keep balls strictly inside."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bisector import Bisector, refine_onto_bisector
from .config import DEFAULT_TOL, Tolerances
from .errors import BisectorDegenerate, NegativeRadius
from .geometry import ConvexDomain, MetricKind, Point, distance_unchecked
from .polyops import convex_intersection, dedupe, point_in_convex, polygon_area


@dataclass(frozen=True)
class MetricBall:
    center: Point
    radius: float
    metric: MetricKind
    boundary: tuple  # ccw convex polygon, single point when radius == 0

    @property
    def area(self) -> float:
        return polygon_area(self.boundary)

    def contains(self, x: float, y: float, tol: float = 0.0) -> bool:
        if len(self.boundary) < 3:
            return math.hypot(x - self.center.x, y - self.center.y) <= tol
        return point_in_convex(self.boundary, x, y, tol)


@dataclass(frozen=True)
class InfiniteBallPair:
    """Limit balls at the two ends of a bisector, approximated by centering
    at parameter t and 1 - t for small t; flagged as approximations."""
    b0: MetricBall
    b1: MetricBall
    site_pair: tuple
    t_inset: float
    is_limit_approximation: bool = True


def _radial_extent(beta: float, alpha: float, metric: MetricKind, r: float) -> float:
    if metric is MetricKind.FUNK:
        return beta * -math.expm1(-r)
    if metric is MetricKind.REVERSE_FUNK:
        return alpha * math.expm1(r)
    if metric is MetricKind.HILBERT:
        big = math.exp(2.0 * r)
        return alpha * beta * (big - 1.0) / (beta + big * alpha)
    return min(beta * -math.expm1(-r), alpha * math.expm1(r))


def _scaled_copy(domain: ConvexDomain, center: Point, ratio: float):
    return [(center.x + ratio * (x - center.x), center.y + ratio * (y - center.y))
            for x, y in zip(domain._xs, domain._ys)]


def ball(domain: ConvexDomain, metric: MetricKind, center: Point, radius: float,
         tol: Tolerances = DEFAULT_TOL) -> MetricBall:
    """Polygonal metric ball around a strictly interior center."""
    center = Point(*center)
    domain.require_interior(center, tol)
    if radius < 0.0:
        raise NegativeRadius(f"radius {radius} < 0")
    if radius == 0.0:
        return MetricBall(center, 0.0, metric, (center,))
    if metric is MetricKind.FUNK:
        pts = _scaled_copy(domain, center, -math.expm1(-radius))
    elif metric is MetricKind.REVERSE_FUNK:
        pts = _scaled_copy(domain, center, -math.expm1(radius))
    elif metric is MetricKind.THOMPSON:
        pts = convex_intersection(_scaled_copy(domain, center, -math.expm1(-radius)),
                                  _scaled_copy(domain, center, -math.expm1(radius)))
    else:
        dirs = []
        for vx, vy in zip(domain._xs, domain._ys):
            a = math.atan2(vy - center.y, vx - center.x)
            dirs.append(a % (2.0 * math.pi))
            dirs.append((a + math.pi) % (2.0 * math.pi))
        pts = []
        for a in sorted(set(dirs)):
            ux, uy = math.cos(a), math.sin(a)
            _, _, _, beta = domain.ray_hit(center.x, center.y, ux, uy)
            _, _, _, alpha = domain.ray_hit(center.x, center.y, -ux, -uy)
            s = _radial_extent(beta, alpha, metric, radius)
            pts.append((center.x + s * ux, center.y + s * uy))
    out = dedupe(pts, 1e-12 * domain.diameter)
    return MetricBall(center, radius, metric, tuple(Point(x, y) for x, y in out))


def infinite_balls(domain: ConvexDomain, bisector: Bisector,
                   tol: Tolerances = DEFAULT_TOL,
                   t_inset: float | None = None) -> InfiniteBallPair:
    """Limit balls through both sites of a traced bisector.

    Centers sit at parameter t_inset and 1 - t_inset; each ball passes
    through both sites because its radius is their common distance.
    """
    s1, s2 = bisector.s1, bisector.s2
    metric = bisector.metric
    t_in = tol.infinite_ball_t if t_inset is None else t_inset
    balls = []
    for t in (t_in, 1.0 - t_in):
        c = bisector.point_at(t)
        tx, ty = bisector.tangent_at(t)
        got = refine_onto_bisector(domain, metric, s1, s2, c.x, c.y,
                                   -ty, tx, 0.05 * domain.diameter, tol)
        if got is not None:
            c = Point(*got)
        if domain.boundary_distance(c.x, c.y) <= 2.0 * tol.boundary_eps:
            raise BisectorDegenerate(
                "limit-ball center fell inside the boundary guard band")
        d1 = distance_unchecked(domain, metric, c.x, c.y, s1.x, s1.y)
        d2 = distance_unchecked(domain, metric, c.x, c.y, s2.x, s2.y)
        balls.append(ball(domain, metric, c, 0.5 * (d1 + d2), tol))
    return InfiniteBallPair(balls[0], balls[1], (s1, s2), t_in)
