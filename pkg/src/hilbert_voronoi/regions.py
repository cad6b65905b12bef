"""Overlap and outer regions of a site pair.

The two limit balls B0, B1 along the pair's bisector classify third sites:
the overlap region Z is their intersection, the outer region W is the part
of the domain interior covered by neither.  A third site inside Z (or W)
has no circumcenter with the pair; inside exactly one ball it does.

Z is the intersection of two convex polygons and stays convex, so the
in-house half-plane clipper computes it.  W subtracts a union from the
domain and is generally disconnected, so it goes through shapely and comes
back as separate components with optional holes.  Both regions are clipped
to the domain, which only matters for reverse-Funk balls of large radius
(those may extend past the boundary).
"""

from __future__ import annotations

from dataclasses import dataclass

from shapely.geometry import MultiPolygon, Polygon
from shapely.ops import unary_union

from .balls import InfiniteBallPair, infinite_balls
from .bisector import Bisector, trace_bisector
from .config import DEFAULT_TOL, Tolerances
from .geometry import ConvexDomain, MetricKind, Point
from .polyops import convex_intersection, polygon_area

_SLIVER_REL = 1e-12


@dataclass(frozen=True)
class OverlapRegion:
    site_pair: tuple
    polygon: tuple  # ccw convex polygon, possibly empty


@dataclass(frozen=True)
class OuterRegion:
    site_pair: tuple
    components: tuple  # of (shell, holes) with ccw shells


def _limit_balls(domain: ConvexDomain, metric: MetricKind, s1: Point, s2: Point,
                 tol: Tolerances, pair: InfiniteBallPair | None,
                 host: Bisector | None) -> InfiniteBallPair:
    if pair is not None:
        return pair
    bis = host if host is not None else trace_bisector(domain, metric, s1, s2, tol)
    return infinite_balls(domain, bis, tol)


def overlap_region(domain: ConvexDomain, metric: MetricKind, s1: Point, s2: Point,
                   tol: Tolerances = DEFAULT_TOL,
                   balls: InfiniteBallPair | None = None,
                   host: Bisector | None = None) -> OverlapRegion:
    pair = _limit_balls(domain, metric, s1, s2, tol, balls, host)
    poly = convex_intersection(pair.b0.boundary, pair.b1.boundary)
    if poly:
        poly = convex_intersection(poly, domain.vertex_list())
    if polygon_area(poly) <= _SLIVER_REL * domain.area:
        poly = []
    return OverlapRegion((Point(*s1), Point(*s2)),
                         tuple(Point(x, y) for x, y in poly))


def outer_region(domain: ConvexDomain, metric: MetricKind, s1: Point, s2: Point,
                 tol: Tolerances = DEFAULT_TOL,
                 balls: InfiniteBallPair | None = None,
                 host: Bisector | None = None) -> OuterRegion:
    pair = _limit_balls(domain, metric, s1, s2, tol, balls, host)
    omega = Polygon(domain.vertex_list())
    union = unary_union([Polygon(pair.b0.boundary).buffer(0),
                         Polygon(pair.b1.boundary).buffer(0)])
    diff = omega.difference(union)
    if diff.is_empty:
        parts = []
    elif isinstance(diff, MultiPolygon):
        parts = list(diff.geoms)
    else:
        parts = [diff]
    comps = []
    floor = _SLIVER_REL * domain.area
    for part in parts:
        if part.area <= floor:
            continue
        shell = [Point(x, y) for x, y in part.exterior.coords[:-1]]
        holes = [[Point(x, y) for x, y in ring.coords[:-1]]
                 for ring in part.interiors]
        comps.append((tuple(shell), tuple(tuple(h) for h in holes)))
    return OuterRegion((Point(*s1), Point(*s2)), tuple(comps))
