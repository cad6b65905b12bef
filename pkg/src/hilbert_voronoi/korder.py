"""All-orders labeling of bisectors and assembly of the order-k diagrams.

Every point of a bisector of (i, j) lies on the boundary between two
order-k cells for exactly one k, namely one more than the number of sites
strictly closer than the defining pair.  That count only changes when the
point crosses a circumcenter with some third site, so labeling works in
three phases: trace all pairwise bisectors and locate all circumcenter
events on their hosts; label the first portion of each bisector by a
direct count at its midpoint; then walk the events in parameter order,
stepping the label by +1 or -1 according to whether the third site ends up
closer or farther just after the event.

Each circumcenter belongs to three host bisectors.  The per-host copies
are reconciled into one canonical point per circumcenter, so the three
hosts cut their portions at the same node and the assembled diagrams share
vertices exactly.  A circumcenter missed by the root scan on one host
(tangential crossing) is recovered from the canonical point of its
siblings.

Cells are faces of the planar arrangement of the boundary ring and the
label-k portions, merged by their k-nearest-site set sampled at a face
representative point.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from shapely.geometry import LineString, MultiPolygon
from shapely.ops import polygonize, unary_union

from .bisector import Bisector, refine_onto_bisector, trace_bisector
from .circumcenter import circumcenter_events
from .config import DEFAULT_TOL, Tolerances
from .errors import DuplicateSites, EmptyInput, OnEdge, SelfIntersectingInput
from .geometry import ConvexDomain, MetricKind, Point, distance_unchecked
from .polyops import kernel, polygon_area

_SLIVER_REL = 1e-12


@dataclass(frozen=True)
class Portion:
    """Maximal bisector parameter run carrying one order label."""
    t_lo: float
    t_hi: float
    k: int


@dataclass(frozen=True)
class HostedEvent:
    """One circumcenter seen from one host bisector."""
    third: int
    t: float
    point: Point
    radius: float
    cid: int              # canonical circumcenter id, shared across hosts
    near_boundary: bool
    recovered: bool = False


@dataclass
class LabeledBisector:
    pair: tuple
    bisector: Bisector
    events: tuple         # HostedEvent sorted by t
    portions: tuple       # Portion, contiguous over [0, 1]

    def label_at(self, t: float) -> int:
        for p in self.portions:
            if p.t_lo <= t <= p.t_hi:
                return p.k
        raise ValueError(f"parameter {t} outside [0, 1]")


@dataclass(frozen=True)
class DiagramEdge:
    pair: tuple
    t_lo: float
    t_hi: float
    polyline: tuple


@dataclass
class OrderDiagram:
    k: int
    domain: ConvexDomain
    metric: MetricKind
    sites: tuple
    edges: tuple          # DiagramEdge
    cells: dict           # sorted site-index tuple -> tuple of (shell, holes)
    vertices: tuple       # (cid, Point) of events bordering label k


@dataclass
class AllOrders:
    domain: ConvexDomain
    metric: MetricKind
    sites: tuple
    bisectors: dict       # (i, j) with i < j -> LabeledBisector
    diagrams: list        # index k-1 -> OrderDiagram
    clusters: dict        # cid -> {"point", "triple", "label_pairs"}
    warnings: list = field(default_factory=list)


def _ranked(domain, metric, sites, x, y):
    ds = [(distance_unchecked(domain, metric, x, y, s.x, s.y), i)
          for i, s in enumerate(sites)]
    ds.sort()
    return ds


def _nearest_t(bis: Bisector, x: float, y: float) -> tuple:
    """(parameter, distance) of the polyline point nearest to (x, y)."""
    pts, ts = bis.points, bis.t
    best, best_t = float("inf"), 0.0
    for i in range(len(pts) - 1):
        ax, ay = pts[i]
        bx, by = pts[i + 1]
        ex, ey = bx - ax, by - ay
        L2 = ex * ex + ey * ey
        u = 0.0 if L2 == 0.0 else min(max(((x - ax) * ex + (y - ay) * ey) / L2, 0.0), 1.0)
        px, py = ax + u * ex, ay + u * ey
        d = math.hypot(x - px, y - py)
        if d < best:
            best = d
            best_t = ts[i] + u * (ts[i + 1] - ts[i])
    return best_t, best


def _corrected(domain, metric, bis, t, tol):
    p = bis.point_at(t)
    tx, ty = bis.tangent_at(t)
    got = refine_onto_bisector(domain, metric, bis.s1, bis.s2,
                               p.x, p.y, -ty, tx, 0.02 * domain.diameter, tol)
    return got if got is not None else (p.x, p.y)


# -- phase 1: bisectors, events, reconciliation -----------------------------

def _collect_events(domain, metric, sites, bisectors, tol, warnings,
                    cache=None, used=None):
    """Circumcenters per host, reconciled to canonical points across the
    three hosts of each triple.  Returns (events_by_pair, clusters)."""
    n = len(sites)
    raw = {}   # (i, j) -> list of [third, t, point, radius, near]
    by_triple = {}
    for (i, j), bis in bisectors.items():
        raw[(i, j)] = []
        for l in range(n):
            if l in (i, j):
                continue
            key = ("ev", metric.value, sites[i], sites[j], sites[l])
            events = cache.get(key) if cache is not None else None
            if events is None:
                events = circumcenter_events(domain, metric, sites[i],
                                             sites[j], sites[l], tol,
                                             host=bis)
            if used is not None:
                used[key] = events
            for ev in events:
                rec = {"pair": (i, j), "third": l, "t": ev.t,
                       "point": ev.point, "radius": ev.radius,
                       "near": ev.near_boundary, "recovered": False}
                raw[(i, j)].append(rec)
                by_triple.setdefault(frozenset((i, j, l)), []).append(rec)

    eps = 1e-6 * domain.diameter
    clusters = {}
    cid = 0
    for triple, recs in sorted(by_triple.items(), key=lambda kv: sorted(kv[0])):
        groups = []
        for rec in sorted(recs, key=lambda r: (r["pair"], r["t"])):
            placed = False
            for g in groups:
                gp = g[0]["point"]
                if math.hypot(rec["point"].x - gp.x, rec["point"].y - gp.y) <= eps:
                    g.append(rec)
                    placed = True
                    break
            if not placed:
                groups.append([rec])
        tri = sorted(triple)
        host_pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        for g in groups:
            cx = sum(r["point"].x for r in g) / len(g)
            cy = sum(r["point"].y for r in g) / len(g)
            canon = Point(cx, cy)
            seen = {r["pair"] for r in g}
            for hp in host_pairs:
                if hp in seen:
                    continue
                # recover the event on the host that missed it: the canonical
                # point already lies on that bisector within tolerance
                bis = bisectors[hp]
                t_rec, dist = _nearest_t(bis, cx, cy)
                if dist > 10.0 * eps:
                    # the point is equidistant to the pair but far from the
                    # traced curve: the pair's tie set has interior (shared
                    # coordinate against parallel edges) and the circumcenter
                    # arc runs through it, off the representative curve
                    warnings.append(
                        f"circumcenter of sites {tri} lies off the traced "
                        f"bisector of {hp}; degenerate tie region, skipped")
                    continue
                third = next(s for s in tri if s not in hp)
                rec = {"pair": hp, "third": third, "t": t_rec, "point": canon,
                       "radius": sum(r["radius"] for r in g) / len(g),
                       "near": any(r["near"] for r in g), "recovered": True}
                raw[hp].append(rec)
                g.append(rec)
                warnings.append(
                    f"circumcenter of sites {tri} recovered on host {hp}")
            for r in g:
                r["cid"] = cid
                r["point"] = canon
            clusters[cid] = {"point": canon, "triple": tuple(tri),
                             "label_pairs": {}}
            cid += 1
    return raw, clusters


# -- phases 2 and 3: labels --------------------------------------------------

def _label_bisector(domain, metric, sites, pair, bis, recs, clusters, tol,
                    warnings):
    i, j = pair
    recs = sorted(recs, key=lambda r: r["t"])
    # merge event groups closer than the merge tolerance in t
    groups = []
    for rec in recs:
        if groups and rec["t"] - groups[-1][-1]["t"] <= tol.event_merge_t:
            groups[-1].append(rec)
        else:
            groups.append([rec])
    for g in groups:
        if len(g) > 1:
            thirds = sorted({r["third"] for r in g})
            warnings.append(
                f"near-degenerate events on bisector {pair}: thirds {thirds} "
                f"within {tol.event_merge_t} in t; labels recounted")

    bps = [sum(r["t"] for r in g) / len(g) for g in groups]
    bounds = [0.0] + bps + [1.0]
    # events at the extreme ends would put a sample on a boundary endpoint,
    # where the distances blow up; the label is constant up to the endpoint
    # anyway, so sampling at the innermost node is equivalent
    t_lo, t_hi = bis.interior_t_range()

    def count_label(t):
        x, y = _corrected(domain, metric, bis, min(max(t, t_lo), t_hi), tol)
        di = distance_unchecked(domain, metric, x, y, sites[i].x, sites[i].y)
        dj = distance_unchecked(domain, metric, x, y, sites[j].x, sites[j].y)
        dpair = 0.5 * (di + dj)
        closer = sum(1 for l, s in enumerate(sites)
                     if l not in (i, j)
                     and distance_unchecked(domain, metric, x, y, s.x, s.y) < dpair)
        return closer + 1

    labels = [count_label(0.5 * (bounds[0] + bounds[1]))]
    for gi, g in enumerate(groups):
        t_mid = 0.5 * (bounds[gi + 1] + bounds[gi + 2])
        if len(g) > 1:
            labels.append(count_label(t_mid))
            continue
        s3 = sites[g[0]["third"]]
        x, y = _corrected(domain, metric, bis, min(max(t_mid, t_lo), t_hi), tol)
        di = distance_unchecked(domain, metric, x, y, sites[i].x, sites[i].y)
        dj = distance_unchecked(domain, metric, x, y, sites[j].x, sites[j].y)
        d3 = distance_unchecked(domain, metric, x, y, s3.x, s3.y)
        labels.append(labels[-1] + (1 if d3 < 0.5 * (di + dj) else -1))

    portions = tuple(Portion(bounds[a], bounds[a + 1], labels[a])
                     for a in range(len(labels)))
    events = []
    for gi, g in enumerate(groups):
        lab_pair = (labels[gi], labels[gi + 1])
        for r in g:
            events.append(HostedEvent(r["third"], r["t"], r["point"],
                                      r["radius"], r["cid"], r["near"],
                                      r["recovered"]))
            clusters[r["cid"]]["label_pairs"][pair] = lab_pair
    return LabeledBisector((i, j), bis, tuple(events), portions)


# -- assembly ---------------------------------------------------------------

def _portion_polyline(lb: LabeledBisector, groups_pts, t_lo, t_hi):
    bis = lb.bisector
    coords = []
    if t_lo == 0.0:
        coords.append(bis.points[0])
    else:
        p = groups_pts[t_lo]
        coords.append((p.x, p.y))
    i0 = bisect_right(bis.t, t_lo)
    i1 = bisect_right(bis.t, t_hi) - 1
    for idx in range(i0, i1 + 1):
        coords.append(bis.points[idx])
    if t_hi == 1.0:
        coords.append(bis.points[-1])
    else:
        p = groups_pts[t_hi]
        coords.append((p.x, p.y))
    out = [coords[0]]
    for c in coords[1:]:
        if math.hypot(c[0] - out[-1][0], c[1] - out[-1][1]) > 0.0:
            out.append(c)
    return out


def _boundary_segments(domain: ConvexDomain, bisectors):
    """Domain ring split at every bisector endpoint (exact coordinates)."""
    per_edge = {e: [] for e in range(domain.m)}
    for lb in bisectors.values():
        bis = lb.bisector
        for end, edge in ((bis.points[0], bis.endpoint_edges[0]),
                          (bis.points[-1], bis.endpoint_edges[1])):
            ax, ay = domain._xs[edge], domain._ys[edge]
            ex, ey = domain._ex[edge], domain._ey[edge]
            u = ((end[0] - ax) * ex + (end[1] - ay) * ey) / (ex * ex + ey * ey)
            per_edge[edge].append((u, (end[0], end[1])))
    segs = []
    for e in range(domain.m):
        a = (domain._xs[e], domain._ys[e])
        b = (domain._xs[(e + 1) % domain.m], domain._ys[(e + 1) % domain.m])
        chain = [a]
        for u, p in sorted(per_edge[e]):
            if 0.0 < u < 1.0 and p != chain[-1]:
                chain.append(p)
        if b != chain[-1]:
            chain.append(b)
        for p, q in zip(chain, chain[1:]):
            segs.append((p, q))
    return segs


def _face_label(domain, metric, sites, k, face, tol):
    probes = [face.representative_point()]
    if face.contains(face.centroid):
        probes.append(face.centroid)
    for p in probes:
        try:
            return cell_key(domain, metric, sites, k, p.x, p.y)
        except OnEdge:
            continue
    raise OnEdge("no tie-free representative point found for a face")


def cell_key(domain, metric, sites, k, x, y, tol: Tolerances = DEFAULT_TOL):
    """The k nearest sites at (x, y) as a sorted index tuple."""
    ds = _ranked(domain, metric, sites, x, y)
    if k < len(ds):
        gap = ds[k][0] - ds[k - 1][0]
        if gap <= 1e-10 * max(1.0, abs(ds[k - 1][0])):
            raise OnEdge(f"point ({x}, {y}) is equidistant at rank {k}")
    return tuple(sorted(idx for _, idx in ds[:k]))


def _assemble(domain, metric, sites, k, labeled, clusters, tol):
    groups_pts = {}
    edges = []
    for lb in labeled.values():
        pts = {}
        for ev in lb.events:
            pts.setdefault(ev.t, ev.point)
        # breakpoints of merged groups: map portion bounds to group points
        for p in lb.portions:
            for t in (p.t_lo, p.t_hi):
                if t in (0.0, 1.0) or t in pts:
                    continue
                best = min(lb.events, key=lambda e: abs(e.t - t))
                pts[t] = best.point
        groups_pts[lb.pair] = pts
        for p in lb.portions:
            if p.k == k:
                edges.append(DiagramEdge(
                    lb.pair, p.t_lo, p.t_hi,
                    tuple(_portion_polyline(lb, pts, p.t_lo, p.t_hi))))

    lines = [LineString(seg) for seg in _boundary_segments(domain, labeled)]
    for e in edges:
        if len(e.polyline) >= 2:
            lines.append(LineString(e.polyline))
    faces = [f for f in polygonize(unary_union(lines))]

    floor = _SLIVER_REL * domain.area
    by_key = {}
    for face in faces:
        if face.area <= floor:
            continue
        key = _face_label(domain, metric, sites, k, face, tol)
        by_key.setdefault(key, []).append(face)
    cells = {}
    for key, fs in by_key.items():
        merged = unary_union(fs)
        parts = list(merged.geoms) if isinstance(merged, MultiPolygon) else [merged]
        out = []
        for part in parts:
            shell = tuple((x, y) for x, y in part.exterior.coords[:-1])
            holes = tuple(tuple((x, y) for x, y in r.coords[:-1])
                          for r in part.interiors)
            out.append((shell, holes))
        cells[key] = tuple(out)

    vertices = []
    for cid, info in clusters.items():
        for lp in info["label_pairs"].values():
            if k in lp:
                vertices.append((cid, info["point"]))
                break
    return OrderDiagram(k, domain, metric, tuple(sites), tuple(edges), cells,
                        tuple(vertices))


# -- public entry points -----------------------------------------------------

def label_all_orders(domain: ConvexDomain, metric: MetricKind, sites,
                     tol: Tolerances = DEFAULT_TOL,
                     assemble: bool = True, cache: dict = None) -> AllOrders:
    sites = tuple(Point(*s) for s in sites)
    n = len(sites)
    if n < 2:
        raise EmptyInput("need at least two sites")
    eps = 1e-9 * domain.diameter
    for a in range(n):
        domain.require_interior(sites[a], tol)
        for b in range(a + 1, n):
            if math.hypot(sites[a].x - sites[b].x, sites[a].y - sites[b].y) <= eps:
                raise DuplicateSites(f"sites {a} and {b} coincide")

    warnings = []
    bisectors = {}
    used = {} if cache is not None else None
    for i in range(n):
        for j in range(i + 1, n):
            key = ("trace", metric.value, sites[i], sites[j])
            bis = cache.get(key) if cache is not None else None
            if bis is None:
                bis = trace_bisector(domain, metric, sites[i], sites[j], tol)
            if used is not None:
                used[key] = bis
            bisectors[(i, j)] = bis
    raw, clusters = _collect_events(domain, metric, sites, bisectors, tol,
                                    warnings, cache, used)
    if cache is not None:
        # keep only entries touched this round so stale coordinates age out
        cache.clear()
        cache.update(used)
    labeled = {}
    for pair, bis in bisectors.items():
        labeled[pair] = _label_bisector(domain, metric, sites, pair, bis,
                                        raw[pair], clusters, tol, warnings)
    diagrams = []
    if assemble:
        for k in range(1, n):
            diagrams.append(_assemble(domain, metric, sites, k, labeled,
                                      clusters, tol))
    return AllOrders(domain, metric, sites, labeled, diagrams, clusters,
                     warnings)


def cell_of(diagram: OrderDiagram, x, tol: Tolerances = DEFAULT_TOL) -> tuple:
    """k nearest sites at an interior query point, by direct distance sort."""
    p = Point(*x)
    diagram.domain.require_interior(p, tol)
    return cell_key(diagram.domain, diagram.metric, diagram.sites,
                    diagram.k, p.x, p.y, tol)


def is_star_shaped(polygon, tol: Tolerances = DEFAULT_TOL):
    """(star-shaped?, kernel polygon) for a simple polygon."""
    ker = kernel(polygon)
    if polygon_area(ker) <= tol.kernel_area_rel * polygon_area(polygon):
        return False, tuple()
    return True, tuple(ker)
