"""Bisector tracing: the equidistance curve of two sites as a parametrized
piecewise polyline.

Straight chords are geodesics here, so f(x) = d(x, s1) - d(x, s2) is
strictly monotone along the segment s1-s2 and has exactly one zero on it.
The curve is marched outward from that seed in both directions with
predictor-corrector steps; the corrector is a 1-D root search of f along
the normal of the last step.  The march shortens its steps as the boundary
nears and finally projects along its heading onto the boundary, which
handles the common case of a bisector terminating at a domain vertex.
Piece boundaries are the crossings of either site's spoke lines (lines
through a site and a domain vertex): within one piece both sites' chord
edge pairs are constant, which is what bounds the piece count by O(m).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Optional

from .config import DEFAULT_TOL, Tolerances
from .errors import BisectorDegenerate, CoincidentSites, OutOfRange
from .geometry import ConvexDomain, MetricKind, Point, distance_unchecked
from .rootfind import illinois

# corrector/root tolerances in distance space; tighter than the public
# equidistance tolerance so downstream composition stays within budget
_F_TOL = 1e-11
_MAX_STEPS = 200_000


@dataclass(frozen=True)
class Piece:
    """Maximal parameter run on which both sites' spoke sectors are constant."""
    t_lo: float
    t_hi: float
    sector1: int
    sector2: int


@dataclass
class Bisector:
    """Traced equidistance curve between two sites.

    points[0] and points[-1] lie on the domain boundary; every other node
    satisfies |d(x, s1) - d(x, s2)| <= the corrector tolerance.  t is the
    normalized polyline arc length.  Oriented so s1 lies to the left.
    """
    s1: Point
    s2: Point
    metric: MetricKind
    points: list
    t: list
    pieces: list
    length: float
    endpoint_edges: tuple = (0, 0)  # domain edge index under each endpoint
    warnings: list = field(default_factory=list)

    @property
    def endpoints(self):
        return Point(*self.points[0]), Point(*self.points[-1])

    def point_at(self, t: float) -> Point:
        """Point on the polyline at normalized arc length t in [0, 1]."""
        if not (0.0 <= t <= 1.0) or t != t:
            raise OutOfRange(f"parameter {t} outside [0, 1]")
        ts = self.t
        i = bisect_right(ts, t) - 1
        if i >= len(ts) - 1:
            return Point(*self.points[-1])
        t0, t1 = ts[i], ts[i + 1]
        w = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
        x0, y0 = self.points[i]
        x1, y1 = self.points[i + 1]
        return Point(x0 + w * (x1 - x0), y0 + w * (y1 - y0))

    def tangent_at(self, t: float):
        ts = self.t
        i = bisect_right(ts, min(max(t, 0.0), 1.0)) - 1
        i = min(max(i, 0), len(ts) - 2)
        x0, y0 = self.points[i]
        x1, y1 = self.points[i + 1]
        ln = math.hypot(x1 - x0, y1 - y0) or 1.0
        return ((x1 - x0) / ln, (y1 - y0) / ln)

    def interior_t_range(self):
        """Parameter range strictly inside the domain (excludes the two
        boundary endpoint nodes)."""
        return self.t[1], self.t[-2]


def point_at(bisector: Bisector, t: float) -> Point:
    return bisector.point_at(t)


class _Tracer:
    def __init__(self, domain: ConvexDomain, metric: MetricKind,
                 s1: Point, s2: Point, tol: Tolerances):
        self.domain = domain
        self.metric = metric
        self.s1 = s1
        self.s2 = s2
        self.tol = tol
        d = domain.diameter
        self.guard = max(tol.boundary_eps, 1e-12 * d)   # evaluation safety band
        self.offset = max(10.0 * tol.boundary_eps, 1e-7 * d)  # endpoint walk depth
        self.inset = max(1e-5 * d, 20.0 * self.offset)  # first interior sample depth
        self.h_max = d / 16.0
        self.h_min = 1e-9 * d
        self.xtol = 1e-13 * d
        self.flat = tol.flatness * d
        self._spokes1 = _spoke_angles(domain, s1)
        self._spokes2 = _spoke_angles(domain, s2)

    # -- metric helpers -----------------------------------------------------

    def f(self, x: float, y: float) -> float:
        dom, met = self.domain, self.metric
        return (distance_unchecked(dom, met, x, y, self.s1.x, self.s1.y)
                - distance_unchecked(dom, met, x, y, self.s2.x, self.s2.y))

    def f_safe(self, x: float, y: float) -> float:
        if self.domain.boundary_distance(x, y) <= self.guard:
            return math.nan
        return self.f(x, y)

    def signature(self, x: float, y: float):
        return (_sector_index(self._spokes1, x - self.s1.x, y - self.s1.y),
                _sector_index(self._spokes2, x - self.s2.x, y - self.s2.y))

    # -- corrector ----------------------------------------------------------

    def correct(self, x: float, y: float, nx: float, ny: float,
                reach: float, s0: float = 1e-4) -> Optional[tuple]:
        """Root of f along (x, y) + sigma * (nx, ny), |sigma| <= reach.

        Probes grow geometrically from s0 * reach / 4; starting tiny keeps
        the probes inside the domain near the boundary, where a large first
        probe would leave it before bracketing the zero.  Callers that know
        the expected displacement pass a matching s0 to skip the early
        rungs."""
        f0 = self.f_safe(x, y)
        if f0 == 0.0:
            return (x, y)
        step = min(s0, 4.0)
        while True:
            for sgn in (1.0, -1.0):
                s = sgn * step * reach * 0.25
                fv = self.f_safe(x + s * nx, y + s * ny)
                if fv != fv:
                    continue
                if f0 == f0 and (fv == 0.0 or (fv > 0.0) != (f0 > 0.0)):
                    root = illinois(
                        lambda sg: self.f_safe(x + sg * nx, y + sg * ny),
                        0.0, s, f0, fv, self.xtol, _F_TOL)
                    return (x + root * nx, y + root * ny)
            if step >= 4.0:
                return None
            step = min(step * 4.0, 4.0)

    def _turn(self, x: float, y: float, ux: float, uy: float, r: float):
        """Zero of f on the circle of radius r around the on-curve node
        (x, y), excluding the arc behind the heading (ux, uy).

        Rescue for corners: where the curve crosses a spoke line its tangent
        jumps, the stale heading points off the curve, and both outgoing
        branches can lie on one side of the corrector's probe line, so no
        amount of step halving brackets a zero (f at the predictor then
        shrinks only linearly with the step).  Every continuation still
        crosses a small circle around the last good node."""
        n = 96
        base = math.atan2(uy, ux)
        step = 2.0 * math.pi / n

        def fa(a):
            return self.f_safe(x + r * math.cos(a), y + r * math.sin(a))

        best = None
        aprev, fprev = base, fa(base)
        for i in range(1, n + 1):
            a = base + step * i
            fv = fa(a)
            if (fv == fv and fprev == fprev
                    and (fv == 0.0 or (fv > 0.0) != (fprev > 0.0))):
                root = illinois(fa, aprev, a, fprev, fv, 1e-10, _F_TOL)
                dx, dy = math.cos(root), math.sin(root)
                d = dx * ux + dy * uy
                if best is None or d > best[0]:
                    best = (d, dx, dy)
            aprev, fprev = a, fv
        # the circle also crosses the branch already traced; a lone hit at
        # dot ~ -1 is that one, not a continuation
        if best is None or best[0] < -0.7:
            return None
        return (x + r * best[1], y + r * best[2], best[1], best[2])

    # -- main march ---------------------------------------------------------

    def _seed(self):
        """The unique zero of f on the open segment s1-s2: straight chords
        are geodesics, so f is strictly monotone along the segment."""
        ax, ay = self.s1.x, self.s1.y
        bx, by = self.s2.x, self.s2.y

        def fu(u):
            return self.f_safe(ax + u * (bx - ax), ay + u * (by - ay))

        lo, hi = 1e-6, 1.0 - 1e-6
        flo, fhi = fu(lo), fu(hi)
        if not (flo < 0.0 < fhi):
            raise BisectorDegenerate(
                "distance difference does not change sign between the sites")
        u = illinois(fu, lo, hi, flo, fhi, 1e-15, _F_TOL)
        return (ax + u * (bx - ax), ay + u * (by - ay))

    def _march(self, x0: float, y0: float, ux: float, uy: float):
        """Walk from (x0, y0) along initial heading (ux, uy) until the
        boundary; returns the nodes beyond the start, the last one being the
        heading's exit point on the boundary."""
        dom = self.domain
        stop_band = max(2.0 * self.offset, 4.0 * self.h_min)
        pts = []
        xk, yk = x0, y0
        h = self.h_max / 64.0
        steps = 0
        turns = 0
        while True:
            steps += 1
            if steps > _MAX_STEPS:
                raise BisectorDegenerate("bisector march did not terminate")
            bd = dom.boundary_distance(xk, yk)
            if bd <= stop_band:
                break
            hh = min(h, max(0.5 * bd, self.h_min))
            px, py = xk + hh * ux, yk + hh * uy
            if dom.boundary_distance(px, py) <= 2.0 * self.guard:
                if hh > self.h_min * 2.0:
                    h = hh * 0.5
                    continue
                break
            # reach of 4 steps: at a crease the curve can turn sharply, so
            # the nearest zero may sit further off the predictor than one
            # step; growing probes still lock onto the nearest branch first
            got = self.correct(px, py, -uy, ux, 4.0 * hh, s0=0.0025)
            if got is None:
                if hh > self.h_min * 2.0:
                    h = hh * 0.5
                    continue
                if bd <= self.inset:
                    break
                r = min(max(64.0 * self.h_min, 1e-7 * dom.diameter), 0.4 * bd)
                turn = self._turn(xk, yk, ux, uy, r) if turns < 64 else None
                if turn is None:
                    raise BisectorDegenerate("corrector lost the bisector")
                turns += 1
                nxp, nyp, ux, uy = turn
                pts.append((nxp, nyp))
                xk, yk = nxp, nyp
                h = self.h_max / 64.0
                continue
            nxp, nyp = got
            disp = math.hypot(nxp - px, nyp - py)
            if disp > self.flat and hh > self.h_min * 2.0:
                h = hh * 0.5
                continue
            dl = math.hypot(nxp - xk, nyp - yk)
            if dl > 0.0:
                ux, uy = (nxp - xk) / dl, (nyp - yk) / dl
            pts.append((nxp, nyp))
            xk, yk = nxp, nyp
            if disp < self.flat * 0.125:
                h = min(h * 1.6, self.h_max)
        hx, hy, edge, _ = dom.ray_hit(xk, yk, ux, uy)
        # snap exactly onto the edge segment so downstream arrangements see
        # the endpoint as incident to the boundary polyline; near-vertex hits
        # take the stored vertex coordinates, since ax + 1.0 * ex rounds to a
        # point one ulp off the far vertex and the dangling end would detach
        # the polyline from the boundary ring
        ax, ay = dom._xs[edge], dom._ys[edge]
        ex, ey = dom._ex[edge], dom._ey[edge]
        u = min(max(((hx - ax) * ex + (hy - ay) * ey) / (ex * ex + ey * ey), 0.0), 1.0)
        if u <= 1e-10:
            pts.append((ax, ay))
        elif u >= 1.0 - 1e-10:
            nxt = (edge + 1) % dom.m
            pts.append((dom._xs[nxt], dom._ys[nxt]))
        else:
            pts.append((ax + u * ex, ay + u * ey))
        return pts, edge

    def trace(self):
        seed = self._seed()
        gx, gy = self._grad(*seed)
        gl = math.hypot(gx, gy)
        if gl == 0.0:
            raise BisectorDegenerate("distance difference is flat at the seed")
        tx, ty = -gy / gl, gx / gl
        fwd, edge_fwd = self._march(seed[0], seed[1], tx, ty)
        bwd, edge_bwd = self._march(seed[0], seed[1], -tx, -ty)
        pts = list(reversed(bwd)) + [seed] + fwd
        return self._finish(pts, (edge_bwd, edge_fwd))

    def _grad(self, x: float, y: float):
        h = 1e-6 * self.domain.diameter
        return ((self.f(x + h, y) - self.f(x - h, y)) / (2.0 * h),
                (self.f(x, y + h) - self.f(x, y - h)) / (2.0 * h))

    # -- post-processing ----------------------------------------------------

    def _finish(self, pts, edges):
        pts = self._refine_crossings(pts)
        # orient so s1 is to the left of the direction of travel
        mid = len(pts) // 2
        ax, ay = pts[mid - 1]
        bx, by = pts[min(mid + 1, len(pts) - 1)]
        cx, cy = pts[mid]
        if (bx - ax) * (self.s1.y - cy) - (by - ay) * (self.s1.x - cx) < 0.0:
            pts.reverse()
            edges = (edges[1], edges[0])
        cum = [0.0]
        for i in range(1, len(pts)):
            cum.append(cum[-1] + math.hypot(pts[i][0] - pts[i - 1][0],
                                            pts[i][1] - pts[i - 1][1]))
        total = cum[-1]
        if total == 0.0:
            raise BisectorDegenerate("zero-length bisector")
        ts = [c / total for c in cum]
        ts[-1] = 1.0
        pieces = self._build_pieces(pts, ts)
        return Bisector(self.s1, self.s2, self.metric, pts, ts, pieces, total,
                        endpoint_edges=edges)

    def _refine_crossings(self, pts):
        """Insert refined nodes wherever the spoke-sector signature changes
        between consecutive interior samples."""
        out = [pts[0]]
        sigs = {}

        def sig(p):
            if p not in sigs:
                sigs[p] = self.signature(p[0], p[1])
            return sigs[p]

        for i in range(1, len(pts) - 1):
            a = out[-1]
            b = pts[i]
            if len(out) > 1 and sig(a) != sig(b):
                for node in self._crossings(a, sig(a), b, sig(b), 0):
                    out.append(node)
            out.append(b)
        out.append(pts[-1])
        return out

    def _crossings(self, a, siga, b, sigb, depth):
        if siga == sigb:
            return []
        gap = math.hypot(b[0] - a[0], b[1] - a[1])
        if gap < max(1e-7 * self.domain.diameter, 4.0 * self.xtol) or depth > 40:
            return []
        mx, my = 0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])
        nx, ny = -(b[1] - a[1]) / gap, (b[0] - a[0]) / gap
        got = self.correct(mx, my, nx, ny, gap)
        if got is None:
            return []
        sigm = self.signature(got[0], got[1])
        left = self._crossings(a, siga, got, sigm, depth + 1)
        right = self._crossings(got, sigm, b, sigb, depth + 1)
        return left + [got] + right

    def _build_pieces(self, pts, ts):
        pieces = []
        run_sig = None
        run_start = 0.0
        for i in range(1, len(pts) - 1):
            s = self.signature(pts[i][0], pts[i][1])
            if run_sig is None:
                run_sig = s
            elif s != run_sig:
                pieces.append(Piece(run_start, ts[i], run_sig[0], run_sig[1]))
                run_start = ts[i]
                run_sig = s
        if run_sig is None:
            run_sig = self.signature(*pts[len(pts) // 2])
        pieces.append(Piece(run_start, 1.0, run_sig[0], run_sig[1]))
        return pieces


def _spoke_angles(domain: ConvexDomain, s: Point):
    """Sorted angles of the 2m spoke directions around a site."""
    angs = []
    for vx, vy in zip(domain._xs, domain._ys):
        a = math.atan2(vy - s.y, vx - s.x)
        angs.append(a % (2.0 * math.pi))
        angs.append((a + math.pi) % (2.0 * math.pi))
    angs.sort()
    return angs


def _sector_index(angles, dx: float, dy: float) -> int:
    a = math.atan2(dy, dx) % (2.0 * math.pi)
    i = bisect_right(angles, a)
    return i % len(angles)


def trace_bisector(domain: ConvexDomain, metric: MetricKind, s1: Point, s2: Point,
                   tol: Tolerances = DEFAULT_TOL) -> Bisector:
    """Trace the equidistance curve of two strictly interior sites."""
    domain.require_interior(s1, tol)
    domain.require_interior(s2, tol)
    if math.hypot(s1.x - s2.x, s1.y - s2.y) <= tol.boundary_eps:
        raise CoincidentSites(f"sites {s1} and {s2} coincide")
    return _Tracer(domain, metric, Point(*s1), Point(*s2), tol).trace()


def refine_onto_bisector(domain: ConvexDomain, metric: MetricKind,
                         s1: Point, s2: Point, x: float, y: float,
                         nx: float, ny: float, reach: float,
                         tol: Tolerances = DEFAULT_TOL):
    """Correct an off-curve point onto the bisector along direction (nx, ny).

    Returns the corrected point or None if no sign change within reach.
    """
    tracer = _Tracer(domain, metric, Point(*s1), Point(*s2), tol)
    return tracer.correct(x, y, nx, ny, reach)
