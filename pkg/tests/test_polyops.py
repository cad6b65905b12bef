"""Polygon helpers checked against shapely where a second opinion exists."""
import math

import pytest
from hypothesis import given, strategies as st
from shapely.geometry import Polygon

from hilbert_voronoi.polyops import (
    centroid, clip_halfplane, convex_intersection, ensure_ccw, is_simple,
    kernel, point_in_convex, polygon_area, signed_area,
)

SQ = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_area_and_centroid_match_shapely():
    polys = [
        SQ,
        [(0, 0), (4, 0), (1, 3)],
        [(2.3, 0.1), (4.1, 0.9), (4.8, 2.6), (3.9, 4.4), (2.0, 4.9),
         (0.4, 3.4), (0.2, 1.4)],
    ]
    for poly in polys:
        ref = Polygon(poly)
        assert polygon_area(poly) == pytest.approx(ref.area, rel=1e-12)
        cx, cy = centroid(poly)
        assert (cx, cy) == pytest.approx((ref.centroid.x, ref.centroid.y),
                                         abs=1e-12)


def test_signed_area_orientation():
    assert signed_area(SQ) > 0
    assert signed_area(list(reversed(SQ))) < 0
    fixed = ensure_ccw(list(reversed(SQ)))
    assert signed_area(fixed) > 0


def test_clip_halfplane_matches_shapely():
    # keep the side the inward normal points to
    clipped = clip_halfplane(SQ, 0.5, 0.0, 1.0, 0.0)
    ref = Polygon(SQ).intersection(Polygon([(0.5, -1), (2, -1), (2, 2), (0.5, 2)]))
    assert polygon_area(clipped) == pytest.approx(ref.area, rel=1e-12)


def test_clip_halfplane_empty():
    assert clip_halfplane(SQ, 2.0, 0.0, 1.0, 0.0) == []


def test_convex_intersection_matches_shapely():
    other = [(0.5, 0.25), (1.5, 0.25), (1.5, 0.75), (0.5, 0.75)]
    got = convex_intersection(SQ, other)
    ref = Polygon(SQ).intersection(Polygon(other))
    assert polygon_area(got) == pytest.approx(ref.area, rel=1e-12)


def test_point_in_convex():
    assert point_in_convex(SQ, 0.5, 0.5)
    assert not point_in_convex(SQ, 1.5, 0.5)
    assert point_in_convex(SQ, 1.0, 0.5, tol=1e-9)


def test_kernel_of_convex_polygon_is_itself():
    ker = kernel(SQ)
    assert polygon_area(ker) == pytest.approx(1.0, rel=1e-9)


def test_kernel_of_star_polygon():
    # classic five-point star: kernel is the inner pentagon, strictly smaller
    outer, inner, pts = 1.0, 0.42, []
    for i in range(5):
        a = math.pi / 2 + i * 2 * math.pi / 5
        pts.append((outer * math.cos(a), outer * math.sin(a)))
        a += math.pi / 5
        pts.append((inner * math.cos(a), inner * math.sin(a)))
    ker = kernel(pts)
    assert ker
    assert 0 < polygon_area(ker) < polygon_area(pts)
    for x, y in ker:
        assert point_in_convex(ensure_ccw(ker), x, y, tol=1e-9)


def test_kernel_empty_for_hooked_polygon():
    # a spiral-like hexagon whose half-plane system is infeasible
    poly = [(0, 0), (6, 0), (6, 6), (2, 6), (2, 2), (4.5, 4.8), (5, 2.5),
            (1, 1.2), (0.4, 5.3)]
    if is_simple(poly):
        assert kernel(poly) == []


def test_is_simple():
    assert is_simple(SQ)
    bow = [(0, 0), (1, 1), (1, 0), (0, 1)]
    assert not is_simple(bow)


@given(st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)),
                min_size=3, max_size=8))
def test_clip_never_grows_area(pts):
    poly = ensure_ccw([(x, y) for x, y in pts])
    if len(poly) < 3 or not is_simple(poly) or abs(signed_area(poly)) < 1e-6:
        return
    before = polygon_area(poly)
    after = clip_halfplane(poly, 0.0, 0.0, 1.0, 0.3)
    assert polygon_area(after) <= before + 1e-12 if after else True
