"""Brute-force raster oracle: per-pixel k-nearest site ranking.

The oracle never touches the bisector tracer or the arrangement code; it
ranks sites at every strictly interior pixel with the vectorized
edge-scan distance routine, so diagram assembly can be checked against an
independent route.  Verification excludes pixels within one pixel
diagonal of a labeled edge or of the domain boundary, where rasterization
cannot distinguish the two answers.

Pixels whose rank-k / rank-(k+1) distances tie are excluded as well.
Polygonal domains admit genuinely two-dimensional bisectors: when two
sites share a coordinate aligned with a pair of parallel edges, every
point whose chords to both sites end on those edges is exactly
equidistant, so the tie set has interior.  The k-nearest set is not
defined there and both routes are free to answer differently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import shapely
from shapely.geometry import LineString, Polygon
from shapely.ops import unary_union

from . import fastdist
from .geometry import ConvexDomain, MetricKind, Point
from .korder import OrderDiagram


@dataclass
class RasterOracle:
    resolution: int
    xs: np.ndarray        # (N,) pixel-center x for strictly interior pixels
    ys: np.ndarray        # (N,)
    ranks: np.ndarray     # (N, n) site indices sorted by distance
    dists: np.ndarray     # (N, n) distances in the same sorted order
    pixel_diag: float

    def kset(self, k: int) -> np.ndarray:
        return np.sort(self.ranks[:, :k], axis=1)


def build_oracle(domain: ConvexDomain, metric: MetricKind, sites,
                 resolution: int) -> RasterOracle:
    if resolution < 64:
        raise ValueError("resolution below 64 is not meaningful")
    minx, maxx = min(domain._xs), max(domain._xs)
    miny, maxy = min(domain._ys), max(domain._ys)
    dx = (maxx - minx) / resolution
    dy = (maxy - miny) / resolution
    diag = float(np.hypot(dx, dy))
    cx = minx + (np.arange(resolution) + 0.5) * dx
    cy = miny + (np.arange(resolution) + 0.5) * dy
    gx, gy = np.meshgrid(cx, cy)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    inside = fastdist.interior_mask(domain, pts, diag)
    pts = pts[inside]
    dm = fastdist.distance_matrix(domain, metric, pts,
                                  [Point(*s) for s in sites])
    order = np.argsort(dm, axis=1, kind="stable")
    dsorted = np.take_along_axis(dm, order, axis=1)
    return RasterOracle(resolution, pts[:, 0], pts[:, 1],
                        order.astype(np.int16), dsorted, diag)


def _paint(oracle, diagram, tie_eps):
    """Rasterize the assembled cells; (got, want, excluded) per pixel."""
    k = diagram.k
    want = oracle.kset(k)

    edge_lines = [LineString(e.polyline) for e in diagram.edges
                  if len(e.polyline) >= 2]
    excluded = np.zeros(len(oracle.xs), dtype=bool)
    if edge_lines:
        buf = unary_union(edge_lines).buffer(oracle.pixel_diag)
        excluded = shapely.contains_xy(buf, oracle.xs, oracle.ys)
    if k < oracle.ranks.shape[1]:
        # rank-k tie: the k-nearest set is ambiguous at this pixel
        excluded |= oracle.dists[:, k] - oracle.dists[:, k - 1] <= tie_eps

    got = np.full((len(oracle.xs), k), -1, dtype=np.int16)
    for key, polys in diagram.cells.items():
        row = np.array(sorted(key), dtype=np.int16)
        for shell, holes in polys:
            poly = Polygon(shell, holes)
            hit = shapely.contains_xy(poly, oracle.xs, oracle.ys)
            got[hit] = row
    return got, want, excluded


def verify_diagram(oracle: RasterOracle, diagram: OrderDiagram,
                   tie_eps: float = 1e-9) -> dict:
    """Compare assembled order-k cells with the oracle pixel labels."""
    k = diagram.k
    n_sites = len(diagram.sites)
    got, want, excluded = _paint(oracle, diagram, tie_eps)
    consider = ~excluded
    considered = int(consider.sum())
    if considered == 0:
        return {"k": k, "resolution": oracle.resolution, "considered": 0,
                "mismatched": 0, "fraction": 0.0,
                "excluded": int(excluded.sum()), "sites": n_sites}
    agree = np.all(got[consider] == want[consider], axis=1)
    mismatched = int((~agree).sum())
    return {"k": k, "resolution": oracle.resolution,
            "considered": considered, "mismatched": mismatched,
            "fraction": mismatched / considered,
            "excluded": int(excluded.sum()), "sites": n_sites}


def mismatch_points(oracle: RasterOracle, diagram: OrderDiagram,
                    tie_eps: float = 1e-9) -> list:
    """Pixel centers where the assembled cells disagree with the oracle.

    Same comparison as verify_diagram, but returns the offending
    coordinates instead of counts so a viewer can overlay them.
    """
    got, want, excluded = _paint(oracle, diagram, tie_eps)
    bad = ~excluded & ~np.all(got == want, axis=1)
    return list(zip(oracle.xs[bad].tolist(), oracle.ys[bad].tolist()))


def verify_all(domain: ConvexDomain, metric: MetricKind, sites, diagrams,
               resolution: int, tie_eps: float = 1e-9) -> list:
    oracle = build_oracle(domain, metric, sites, resolution)
    return [verify_diagram(oracle, d, tie_eps) for d in diagrams]
