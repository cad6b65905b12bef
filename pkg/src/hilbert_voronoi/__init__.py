"""Higher-order Voronoi diagrams, Delaunay mosaics and clustering in the
Hilbert, Funk and Thompson geometries on convex polygonal domains."""

from .config import DEFAULT_TOL, Tolerances
from .geometry import (
    Chord,
    ConvexDomain,
    MetricKind,
    Point,
    build_domain,
    chord_through,
    chord_through_scan,
    distance,
)
from .balls import MetricBall, InfiniteBallPair, ball, infinite_balls
from .bisector import Bisector, Piece, point_at, trace_bisector
from .circumcenter import CircumcenterEvent, circumcenter_events
from .regions import OuterRegion, OverlapRegion, outer_region, overlap_region
from .korder import (
    AllOrders,
    DiagramEdge,
    HostedEvent,
    LabeledBisector,
    OrderDiagram,
    Portion,
    cell_key,
    cell_of,
    is_star_shaped,
    label_all_orders,
)
from .raster import RasterOracle, build_oracle, verify_all, verify_diagram
from .mosaic import FrechetMean, Mosaic, delaunay_mosaic, frechet_mean
from .clustering import (
    ClusteringState,
    kmeans_init,
    kmeans_run,
    kmeans_step,
    single_linkage,
)

__all__ = [
    "AllOrders",
    "Bisector",
    "Chord",
    "CircumcenterEvent",
    "ClusteringState",
    "ConvexDomain",
    "DEFAULT_TOL",
    "DiagramEdge",
    "FrechetMean",
    "HostedEvent",
    "InfiniteBallPair",
    "LabeledBisector",
    "MetricBall",
    "MetricKind",
    "Mosaic",
    "OrderDiagram",
    "OuterRegion",
    "OverlapRegion",
    "Piece",
    "Point",
    "Portion",
    "RasterOracle",
    "Tolerances",
    "ball",
    "build_domain",
    "build_oracle",
    "cell_key",
    "cell_of",
    "chord_through",
    "chord_through_scan",
    "circumcenter_events",
    "delaunay_mosaic",
    "distance",
    "frechet_mean",
    "infinite_balls",
    "is_star_shaped",
    "kmeans_init",
    "kmeans_run",
    "kmeans_step",
    "label_all_orders",
    "outer_region",
    "overlap_region",
    "point_at",
    "single_linkage",
    "trace_bisector",
    "verify_all",
    "verify_diagram",
]
