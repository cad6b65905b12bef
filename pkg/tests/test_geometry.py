"""Domain construction, chords, and the four polygonal distances."""
import math

import pytest
from hypothesis import given, strategies as st

from hilbert_voronoi import (
    MetricKind, Point, build_domain, chord_through, chord_through_scan,
    distance,
)
from hilbert_voronoi.errors import (
    CoincidentPoints, DuplicateVertex, NotConvex, OutsideDomain,
    PointOnBoundary, TooFewVertices,
)

from conftest import ALL_METRICS


def test_build_domain_rejects_degenerate_input():
    with pytest.raises(TooFewVertices):
        build_domain([(0, 0), (1, 0)])
    with pytest.raises(DuplicateVertex):
        build_domain([(0, 0), (1, 0), (1, 0), (0, 1)])
    with pytest.raises(NotConvex):
        build_domain([(0, 0), (2, 0), (1, 0.2), (0, 2)])


def test_build_domain_accepts_cw_input():
    ccw = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    cw = build_domain([(0, 1), (1, 1), (1, 0), (0, 0)])
    assert ccw.area == pytest.approx(cw.area)
    mid = Point(0.5, 0.5)
    assert ccw.contains(mid) and cw.contains(mid)


def test_domain_basic_measures(square, heptagon):
    assert square.area == pytest.approx(1.0)
    assert square.diameter == pytest.approx(math.sqrt(2))
    assert square.centroid == pytest.approx((0.5, 0.5))
    assert heptagon.m == 7
    assert heptagon.contains(heptagon.centroid)
    assert not heptagon.contains(Point(10, 10))


def test_boundary_distance(square):
    assert square.boundary_distance(0.5, 0.5) == pytest.approx(0.5)
    assert square.boundary_distance(0.1, 0.5) == pytest.approx(0.1)


def test_ray_hit_matches_scan(square, heptagon):
    for dom in (square, heptagon):
        cx, cy = dom.centroid
        for k in range(40):
            ang = 2 * math.pi * k / 40 + 0.013
            hit = dom.ray_hit(cx, cy, math.cos(ang), math.sin(ang))
            scan = dom.ray_hit_scan(cx, cy, math.cos(ang), math.sin(ang))
            assert hit[:2] == pytest.approx(scan[:2], abs=1e-9)
            assert hit[2] == scan[2]


def test_chord_through_spot(square):
    ch = chord_through(square, Point(0.5, 0.5), Point(0.75, 0.5))
    assert ch.a == pytest.approx((0.0, 0.5))
    assert ch.b == pytest.approx((1.0, 0.5))
    # a is behind p, b is ahead of q
    assert ch.a.x < 0.5 < 0.75 < ch.b.x


def test_chord_through_matches_scan(heptagon):
    cx, cy = heptagon.centroid
    for k in range(24):
        ang = 2 * math.pi * k / 24 + 0.07
        q = Point(cx + 0.9 * math.cos(ang), cy + 0.9 * math.sin(ang))
        c1 = chord_through(heptagon, Point(cx, cy), q)
        c2 = chord_through_scan(heptagon, Point(cx, cy), q)
        assert c1.a == pytest.approx(c2.a, abs=1e-9)
        assert c1.b == pytest.approx(c2.b, abs=1e-9)


def test_chord_coincident_points(square):
    with pytest.raises(CoincidentPoints):
        chord_through(square, Point(0.5, 0.5), Point(0.5, 0.5))


def test_distance_spot_values(square):
    p, q = Point(0.5, 0.5), Point(0.75, 0.5)
    # chord exits at (0,0.5) and (1,0.5); the four ratios are elementary
    assert distance(square, MetricKind.HILBERT, p, q) == pytest.approx(
        0.5 * math.log(3.0), abs=1e-12)
    assert distance(square, MetricKind.FUNK, p, q) == pytest.approx(
        math.log(2.0), abs=1e-12)
    assert distance(square, MetricKind.REVERSE_FUNK, p, q) == pytest.approx(
        math.log(1.5), abs=1e-12)
    assert distance(square, MetricKind.THOMPSON, p, q) == pytest.approx(
        math.log(2.0), abs=1e-12)


def test_distance_spot_close_to_boundary(square):
    # pushing q toward the boundary blows up Funk but not reverse Funk
    p = Point(0.5, 0.5)
    q = Point(1 - 1e-7, 0.5)
    assert distance(square, MetricKind.FUNK, p, q) > 15
    assert distance(square, MetricKind.REVERSE_FUNK, p, q) < 0.75


def test_distance_rejects_bad_points(square):
    inside = Point(0.5, 0.5)
    with pytest.raises(OutsideDomain):
        distance(square, MetricKind.HILBERT, inside, Point(1.5, 0.5))
    with pytest.raises(PointOnBoundary):
        distance(square, MetricKind.HILBERT, inside, Point(1.0, 0.5))


interior = st.floats(0.02, 0.98)


@given(px=interior, py=interior, qx=interior, qy=interior)
def test_identity_and_nonnegativity(px, py, qx, qy):
    dom = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    p, q = Point(px, py), Point(qx, qy)
    for metric in ALL_METRICS:
        assert distance(dom, metric, p, p) == 0.0
        assert distance(dom, metric, p, q) >= 0.0


@given(px=interior, py=interior, qx=interior, qy=interior)
def test_hilbert_thompson_symmetry(px, py, qx, qy):
    dom = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    p, q = Point(px, py), Point(qx, qy)
    for metric in (MetricKind.HILBERT, MetricKind.THOMPSON):
        assert distance(dom, metric, p, q) == pytest.approx(
            distance(dom, metric, q, p), abs=1e-10)


@given(px=interior, py=interior, qx=interior, qy=interior,
       rx=interior, ry=interior)
def test_triangle_inequality(px, py, qx, qy, rx, ry):
    dom = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    p, q, r = Point(px, py), Point(qx, qy), Point(rx, ry)
    for metric in ALL_METRICS:
        dpq = distance(dom, metric, p, q)
        dpr = distance(dom, metric, p, r)
        drq = distance(dom, metric, r, q)
        assert dpq <= dpr + drq + 1e-9


def test_funk_is_asymmetric(square):
    p, q = Point(0.5, 0.5), Point(0.75, 0.5)
    f = distance(square, MetricKind.FUNK, p, q)
    r = distance(square, MetricKind.FUNK, q, p)
    assert abs(f - r) > 0.25
    assert distance(square, MetricKind.REVERSE_FUNK, p, q) == pytest.approx(
        r, abs=1e-12)


def test_hilbert_is_half_sum_of_funk_pair(heptagon):
    p, q = Point(1.5, 2.0), Point(3.0, 3.1)
    f = distance(heptagon, MetricKind.FUNK, p, q)
    r = distance(heptagon, MetricKind.REVERSE_FUNK, p, q)
    assert distance(heptagon, MetricKind.HILBERT, p, q) == pytest.approx(
        0.5 * (f + r), abs=1e-12)
    assert distance(heptagon, MetricKind.THOMPSON, p, q) == pytest.approx(
        max(f, r), abs=1e-12)


def test_projective_invariance_of_hilbert(square):
    # scaling the whole picture leaves Hilbert distances unchanged
    big = build_domain([(0, 0), (7, 0), (7, 7), (0, 7)])
    d1 = distance(square, MetricKind.HILBERT, Point(0.3, 0.4), Point(0.6, 0.7))
    d2 = distance(big, MetricKind.HILBERT, Point(2.1, 2.8), Point(4.2, 4.9))
    assert d1 == pytest.approx(d2, abs=1e-12)
