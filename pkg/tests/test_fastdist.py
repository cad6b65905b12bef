"""Vectorized distance kernels must agree with the scalar route."""
import numpy as np
import pytest

from hilbert_voronoi import MetricKind, Point, distance
from hilbert_voronoi.fastdist import (
    distance_matrix, distances_to_site, interior_mask,
)

from conftest import ALL_METRICS


def _grid(dom, n):
    xs = [v.x for v in dom.vertices]
    ys = [v.y for v in dom.vertices]
    gx, gy = np.meshgrid(np.linspace(min(xs), max(xs), n),
                         np.linspace(min(ys), max(ys), n))
    return np.column_stack([gx.ravel(), gy.ravel()])


def test_interior_mask(square):
    pts = np.array([[0.5, 0.5], [0.99, 0.5], [1.01, 0.5], [0.0, 0.0]])
    mask = interior_mask(square, pts)
    assert mask.tolist() == [True, True, False, False]
    tight = interior_mask(square, pts, margin=0.05)
    assert tight.tolist() == [True, False, False, False]


@pytest.mark.parametrize("metric", ALL_METRICS)
def test_vector_matches_scalar(heptagon, metric):
    site = Point(2.1, 2.4)
    pts = _grid(heptagon, 24)
    mask = interior_mask(heptagon, pts, margin=1e-9 * heptagon.diameter)
    pts = pts[mask]
    fast = distances_to_site(heptagon, metric, pts, site)
    for row, want in zip(pts, fast):
        slow = distance(heptagon, metric, Point(row[0], row[1]), site)
        assert want == pytest.approx(slow, abs=1e-10)


def test_distance_matrix_shape_and_content(square):
    sites = (Point(0.3, 0.3), Point(0.7, 0.6))
    pts = np.array([[0.5, 0.5], [0.25, 0.75]])
    dm = distance_matrix(square, MetricKind.HILBERT, pts, sites)
    assert dm.shape == (2, 2)
    for i, row in enumerate(pts):
        for j, s in enumerate(sites):
            assert dm[i, j] == pytest.approx(
                distance(square, MetricKind.HILBERT, Point(*row), s),
                abs=1e-12)


def test_site_row_is_zero(square):
    site = Point(0.4, 0.6)
    pts = np.array([[0.4, 0.6], [0.5, 0.5]])
    for metric in ALL_METRICS:
        d = distances_to_site(square, metric, pts, site)
        assert d[0] == 0.0
        assert d[1] > 0.0
