"""Delaunay mosaics: one node per cell at the Fréchet mean of its defining
sites, one edge per pair of cells that share a labeled bisector portion.

The mean minimizes the sum of metric distances to its sites.  The distance
is piecewise smooth with creases where chord endpoints switch domain
edges, so the optimizer is a derivative-free compass search: probe eight
directions, keep the best strict improvement, halve the step when none
helps.  The search starts from the best of the sites' centroid and the
sites themselves, which makes the result at least as good as any input
site by construction.

For two sites of a symmetric metric every point of the segment is optimal
(triangle inequality with equality along a geodesic); the parameter
midpoint is returned so the choice is deterministic.  Asymmetric metrics
have no such tie and go through the search like any other input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from shapely import STRtree
from shapely.geometry import Point as ShapelyPoint, Polygon
from shapely.ops import nearest_points, unary_union

from .config import DEFAULT_TOL, Tolerances
from .errors import EmptyInput
from .geometry import ConvexDomain, MetricKind, Point, distance
from .korder import OrderDiagram
from .polyops import centroid

_SQ2 = math.sqrt(0.5)
_DIRS = ((1.0, 0.0), (_SQ2, _SQ2), (0.0, 1.0), (-_SQ2, _SQ2),
         (-1.0, 0.0), (-_SQ2, -_SQ2), (0.0, -1.0), (_SQ2, -_SQ2))
_PROBE = 1e-4              # certificate radius for the local-minimum check


@dataclass(frozen=True)
class FrechetMean:
    point: Point
    objective: float
    iterations: int
    converged: bool
    clamped: bool = False  # pulled into its cell by delaunay_mosaic


@dataclass(frozen=True)
class Mosaic:
    k: int
    nodes: dict            # cell subset -> FrechetMean
    edges: tuple           # ((subset, subset), ...) sorted


def _objective(domain, metric, x, y, pts, tol):
    if not domain.contains(Point(x, y), tol.boundary_eps):
        return math.inf
    total = 0.0
    for p in pts:
        total += distance(domain, metric, Point(x, y), p, tol)
    return total


def frechet_mean(domain: ConvexDomain, metric: MetricKind, points,
                 tol: Tolerances = DEFAULT_TOL) -> FrechetMean:
    pts = [Point(*p) for p in points]
    if not pts:
        raise EmptyInput("frechet_mean needs at least one point")
    for p in pts:
        domain.require_interior(p, tol)
    if len(pts) == 1:
        return FrechetMean(pts[0], 0.0, 0, True)

    site_objs = [_objective(domain, metric, p.x, p.y, pts, tol) for p in pts]
    if len(pts) == 2 and metric.symmetric:
        mid = Point(0.5 * (pts[0].x + pts[1].x), 0.5 * (pts[0].y + pts[1].y))
        return FrechetMean(mid, _objective(domain, metric, mid.x, mid.y,
                                           pts, tol), 0, True)

    cx, cy = centroid([(p.x, p.y) for p in pts])
    cands = [(Point(cx, cy), _objective(domain, metric, cx, cy, pts, tol))]
    cands += list(zip(pts, site_objs))
    best, best_obj = min(cands, key=lambda c: c[1])

    step = 0.25 * domain.diameter
    floor = 1e-12 * domain.diameter
    it = 0
    while it < tol.mean_max_iter and step > floor:
        it += 1
        move = None
        for dx, dy in _DIRS:
            qx, qy = best.x + step * dx, best.y + step * dy
            obj = _objective(domain, metric, qx, qy, pts, tol)
            if obj < best_obj and (move is None or obj < move[2]):
                move = (qx, qy, obj)
        if move is None:
            step *= 0.5
        else:
            best, best_obj = Point(move[0], move[1]), move[2]

    converged = True
    for dx, dy in _DIRS:
        obj = _objective(domain, metric, best.x + _PROBE * dx,
                         best.y + _PROBE * dy, pts, tol)
        if obj < best_obj - tol.opt_eps:
            converged = False
            break
    return FrechetMean(best, best_obj, it, converged)


def _clamp_into(mean: FrechetMean, polys, diam: float) -> FrechetMean:
    """Pull a mean that escaped its cell back inside, flagging the clamp."""
    shapes = [Polygon(shell, holes) for shell, holes in polys]
    pt = ShapelyPoint(mean.point.x, mean.point.y)
    if any(s.covers(pt) for s in shapes):
        return mean
    best = min(shapes, key=lambda s: s.distance(pt))
    on_rim = nearest_points(best.exterior, pt)[0]
    # nudge toward the cell's representative point to land strictly inside
    rep = best.representative_point()
    gx = on_rim.x + 1e-9 * diam * (rep.x - on_rim.x)
    gy = on_rim.y + 1e-9 * diam * (rep.y - on_rim.y)
    return FrechetMean(Point(gx, gy), mean.objective, mean.iterations,
                       mean.converged, clamped=True)


def delaunay_mosaic(diagram: OrderDiagram,
                    tol: Tolerances = DEFAULT_TOL) -> Mosaic:
    dom, metric, sites = diagram.domain, diagram.metric, diagram.sites
    nodes = {}
    shapes = {}
    for subset, polys in diagram.cells.items():
        mean = frechet_mean(dom, metric, [sites[i] for i in subset], tol)
        nodes[subset] = _clamp_into(mean, polys, dom.diameter)
        shapes[subset] = unary_union([Polygon(s, h) for s, h in polys])

    # adjacency straight off the assembled cells: two cells are adjacent
    # when their boundaries share positive length, which stays well defined
    # even where the metric ties on an open region
    keys = sorted(shapes)
    tree = STRtree([shapes[key] for key in keys])
    lmin = 1e-9 * dom.diameter
    edges = set()
    for ia, ka in enumerate(keys):
        for ib in tree.query(shapes[ka]):
            kb = keys[int(ib)]
            if kb <= ka:
                continue
            rim = shapes[ka].boundary.intersection(shapes[kb].boundary)
            if rim.length > lmin:
                edges.add((ka, kb))
    return Mosaic(diagram.k, nodes, tuple(sorted(edges)))
