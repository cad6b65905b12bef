"""Bisector tracing: equidistance, endpoints, orientation, hard cases."""
import math

import pytest

from hilbert_voronoi import (
    MetricKind, Point, build_domain, distance, trace_bisector,
)
from hilbert_voronoi.errors import CoincidentSites

from conftest import ALL_METRICS


def node_equidistance_error(dom, metric, bis):
    worst = 0.0
    for q in bis.points[1:-1]:
        p = Point(q[0], q[1])
        if not dom.contains(p, margin=1e-9 * dom.diameter):
            continue
        d1 = distance(dom, metric, p, bis.s1)
        d2 = distance(dom, metric, p, bis.s2)
        worst = max(worst, abs(d1 - d2))
    return worst


@pytest.mark.parametrize("metric", ALL_METRICS)
def test_node_equidistance(heptagon, metric):
    # the traced nodes sit on the curve to solver precision
    bis = trace_bisector(heptagon, metric, Point(1.6, 2.1), Point(3.1, 2.9))
    assert node_equidistance_error(heptagon, metric, bis) < 1e-8


def test_chord_deviation_bounded_by_flatness(heptagon):
    # between nodes the polyline is a chord; its metric error scales with
    # the flatness budget, not with solver precision
    bis = trace_bisector(heptagon, MetricKind.HILBERT,
                         Point(1.6, 2.1), Point(3.1, 2.9))
    worst = 0.0
    for i in range(1, 240):
        p = Point(*bis.point_at(i / 240))
        if not heptagon.contains(p, margin=1e-9 * heptagon.diameter):
            continue
        d1 = distance(heptagon, MetricKind.HILBERT, p, bis.s1)
        d2 = distance(heptagon, MetricKind.HILBERT, p, bis.s2)
        worst = max(worst, abs(d1 - d2))
    assert worst < 1e-3 * heptagon.diameter


@pytest.mark.parametrize("metric", ALL_METRICS)
def test_endpoints_reach_boundary(heptagon, metric):
    bis = trace_bisector(heptagon, metric, Point(1.6, 2.1), Point(3.1, 2.9))
    for p in (bis.points[0], bis.points[-1]):
        assert heptagon.boundary_distance(p[0], p[1]) == pytest.approx(
            0.0, abs=1e-6 * heptagon.diameter)
    e0, e1 = bis.endpoint_edges
    assert 0 <= e0 < heptagon.m and 0 <= e1 < heptagon.m


def test_orientation_s1_left(square):
    s1, s2 = Point(0.3, 0.5), Point(0.7, 0.5)
    bis = trace_bisector(square, MetricKind.HILBERT, s1, s2)
    p = bis.point_at(0.5)
    t = bis.tangent_at(0.5)
    # left of the tangent means positive cross product with p -> s1
    cross = t[0] * (s1.y - p.y) - t[1] * (s1.x - p.x)
    assert cross > 0


def test_swap_gives_same_curve(heptagon):
    s1, s2 = Point(1.6, 2.1), Point(3.1, 2.9)
    a = trace_bisector(heptagon, MetricKind.HILBERT, s1, s2)
    b = trace_bisector(heptagon, MetricKind.HILBERT, s2, s1)
    # same point set, opposite orientation
    assert a.point_at(0.0) == pytest.approx(b.point_at(1.0), abs=1e-6)
    assert a.point_at(1.0) == pytest.approx(b.point_at(0.0), abs=1e-6)
    from shapely.geometry import LineString, Point as ShPoint
    other = LineString(b.points)
    for t in (0.25, 0.5, 0.75):
        p = a.point_at(t)
        assert other.distance(ShPoint(p)) < 2e-4 * heptagon.diameter


def test_vertical_bisector_of_mirror_sites(square):
    bis = trace_bisector(square, MetricKind.HILBERT,
                         Point(0.3, 0.5), Point(0.7, 0.5))
    for i in range(0, 101, 10):
        p = bis.point_at(i / 100)
        assert p[0] == pytest.approx(0.5, abs=1e-9)


def test_corner_terminating_bisector(square):
    # mirror sites across the main diagonal: the bisector is the diagonal
    bis = trace_bisector(square, MetricKind.HILBERT,
                         Point(0.6, 0.2), Point(0.2, 0.6))
    ends = sorted([bis.points[0], bis.points[-1]])
    assert ends[0] == pytest.approx((0.0, 0.0), abs=1e-9)
    assert ends[1] == pytest.approx((1.0, 1.0), abs=1e-9)


def test_crease_pair_traces(square):
    # axis-aligned near-parallel pair: the curve has a sharp vertical crease
    dom = build_domain([(100, 100), (300, 100), (300, 300), (100, 300)])
    bis = trace_bisector(dom, MetricKind.HILBERT,
                         Point(160, 284.9), Point(180, 285))
    assert node_equidistance_error(dom, MetricKind.HILBERT, bis) < 1e-8
    assert len(bis.points) < 600


def test_pieces_cover_unit_interval(heptagon):
    bis = trace_bisector(heptagon, MetricKind.FUNK,
                         Point(1.6, 2.1), Point(3.1, 2.9))
    assert bis.pieces
    assert bis.pieces[0].t_lo == 0.0
    assert bis.pieces[-1].t_hi == 1.0
    for a, b in zip(bis.pieces, bis.pieces[1:]):
        assert a.t_hi == pytest.approx(b.t_lo, abs=1e-12)


def test_point_at_interpolates_monotonically(heptagon):
    bis = trace_bisector(heptagon, MetricKind.HILBERT,
                         Point(1.6, 2.1), Point(3.1, 2.9))
    total = 0.0
    prev = bis.point_at(0.0)
    for i in range(1, 51):
        cur = bis.point_at(i / 50)
        total += math.hypot(cur[0] - prev[0], cur[1] - prev[1])
        prev = cur
    assert total == pytest.approx(bis.length, rel=1e-2)


def test_coincident_sites_rejected(square):
    with pytest.raises(CoincidentSites):
        trace_bisector(square, MetricKind.HILBERT,
                       Point(0.5, 0.5), Point(0.5, 0.5))


def test_spoke_corner_turn_rescues_march():
    # the curve kinks where it crosses the spoke through a site and a domain
    # vertex; both outgoing branches can sit on one side of the corrector's
    # probe line, so the march must scan directions around the stall point
    dom = build_domain([(0.8585510542119928, -4.049635598161991),
                        (2.20382551282878, -1.8311226638820433),
                        (-2.0512179058162783, -1.6150820071676564)])
    bis = trace_bisector(dom, MetricKind.HILBERT,
                         Point(-0.28769328107708003, -2.6122054638947096),
                         Point(0.3525148859071554, -2.9975985110493295))
    assert node_equidistance_error(dom, MetricKind.HILBERT, bis) < 1e-8


def test_endpoint_at_domain_vertex_is_exact():
    # a bisector terminating at a domain vertex must reuse the stored vertex
    # coordinates: ax + 1.0 * (bx - ax) rounds one ulp off bx, and the stray
    # endpoint detaches the polyline from the boundary ring downstream
    dom = build_domain([(1.5417041536487357, 1.1099823222934635),
                        (0.5031411485417783, 1.397613757847619),
                        (0.29838128958166277, 0.04085449768334809),
                        (1.1868854110182263, -0.7241481499407152),
                        (1.924974912615263, 0.6245349224160985)])
    bis = trace_bisector(dom, MetricKind.HILBERT,
                         Point(0.7030676193476837, 0.7938254918152736),
                         Point(1.281378388253069, 0.7370498491005903))
    verts = set(zip(dom._xs, dom._ys))
    hits = [p for p in (bis.points[0], bis.points[-1]) if p in verts]
    assert hits, "expected one endpoint exactly at a domain vertex"
