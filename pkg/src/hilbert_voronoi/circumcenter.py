"""Three-site circumcenters located along a host bisector.

A circumcenter of (s1, s2, s3) is a point equidistant to all three, i.e. a
zero of g(t) = d(x(t), s3) - d(x(t), s1) along the bisector x(t) of the
pair (s1, s2).  Absence of a zero is a meaningful outcome, not an error:
the result is simply an empty tuple of events.

Every g evaluation first pulls the interpolated polyline point back onto
the true bisector with the 1-D corrector; the raw polyline sagitta would
otherwise dominate the equidistance tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bisector import Bisector, refine_onto_bisector, trace_bisector
from .config import DEFAULT_TOL, Tolerances
from .errors import CoincidentSites
from .geometry import ConvexDomain, MetricKind, Point, distance_unchecked
from .rootfind import illinois, scan_brackets

_G_TOL = 1e-12


@dataclass(frozen=True)
class CircumcenterEvent:
    sites: tuple
    host_bisector: Bisector
    t: float
    point: Point
    radius: float
    near_boundary: bool = False


def _check_distinct(domain: ConvexDomain, sites) -> None:
    eps = 1e-12 * domain.diameter
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            if math.hypot(sites[i].x - sites[j].x, sites[i].y - sites[j].y) <= eps:
                raise CoincidentSites(
                    f"sites {i} and {j} coincide at {sites[i]}")


def circumcenter_events(domain: ConvexDomain, metric: MetricKind,
                        s1: Point, s2: Point, s3: Point,
                        tol: Tolerances = DEFAULT_TOL,
                        host: Bisector | None = None) -> tuple:
    """All circumcenters of the triple, sorted by parameter on the (s1, s2)
    bisector.  Empty tuple when the triple has none.  Roots within the
    endpoint tolerance are flagged near_boundary."""
    s1, s2, s3 = Point(*s1), Point(*s2), Point(*s3)
    _check_distinct(domain, (s1, s2, s3))
    for p in (s1, s2, s3):
        domain.require_interior(p, tol)
    bis = host if host is not None else trace_bisector(domain, metric, s1, s2, tol)
    reach = 0.02 * domain.diameter

    def onto(t: float):
        p = bis.point_at(t)
        tx, ty = bis.tangent_at(t)
        return refine_onto_bisector(domain, metric, bis.s1, bis.s2,
                                    p.x, p.y, -ty, tx, reach, tol)

    def geval(t: float):
        got = onto(t)
        if got is None:
            return float("nan"), None
        x, y = got
        d1 = distance_unchecked(domain, metric, x, y, bis.s1.x, bis.s1.y)
        d3 = distance_unchecked(domain, metric, x, y, s3.x, s3.y)
        return d3 - d1, (x, y)

    lo, hi = 1e-5, 1.0 - 1e-5
    ts = {lo, hi}
    for piece in bis.pieces:
        for t in (piece.t_lo, piece.t_hi):
            if lo < t < hi:
                ts.add(t)
    n_grid = max(4 * len(bis.pieces), 32)
    for k in range(1, n_grid):
        ts.add(lo + (hi - lo) * k / n_grid)
    ts = sorted(ts)

    events = []
    for (ta, fa), (tb, fb) in scan_brackets(lambda t: geval(t)[0], ts):
        root = illinois(lambda t: geval(t)[0], ta, tb, fa, fb, 1e-12, _G_TOL)
        gval, pt = geval(root)
        if pt is None or not math.isfinite(gval):
            continue
        x, y = pt
        d1 = distance_unchecked(domain, metric, x, y, s1.x, s1.y)
        d2 = distance_unchecked(domain, metric, x, y, s2.x, s2.y)
        d3 = distance_unchecked(domain, metric, x, y, s3.x, s3.y)
        events.append(CircumcenterEvent(
            sites=(s1, s2, s3),
            host_bisector=bis,
            t=root,
            point=Point(x, y),
            radius=(d1 + d2 + d3) / 3.0,
            near_boundary=(root <= lo + tol.infinite_ball_t
                           or root >= hi - tol.infinite_ball_t)))
    events.sort(key=lambda e: e.t)
    # tangential or re-bracketed duplicates collapse to one event
    out = []
    for ev in events:
        if out and abs(ev.t - out[-1].t) <= 1e-9:
            continue
        out.append(ev)
    return tuple(out)
