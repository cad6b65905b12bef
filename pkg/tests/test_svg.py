"""SVG snapshots of engine output."""
import xml.etree.ElementTree as ET

from hilbert_voronoi import MetricKind, Point, label_all_orders
from hilbert_voronoi.svg_export import render_svg

SITES = (Point(0.32, 0.37), Point(0.66, 0.33), Point(0.52, 0.70))


def test_output_is_well_formed_xml(square):
    res = label_all_orders(square, MetricKind.HILBERT, SITES)
    text = render_svg(square, sites=SITES, diagrams=res.diagrams,
                      timestamp=False)
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")


def test_deterministic_without_timestamp(square):
    res = label_all_orders(square, MetricKind.HILBERT, SITES)
    a = render_svg(square, sites=SITES, diagrams=res.diagrams, timestamp=False)
    b = render_svg(square, sites=SITES, diagrams=res.diagrams, timestamp=False)
    assert a == b
    assert "generated" not in a.lower()


def test_pinned_timestamp_appears_verbatim(square):
    text = render_svg(square, sites=SITES, timestamp="2026-01-02T03:04:05Z")
    assert "2026-01-02T03:04:05Z" in text


def test_order_groups_and_sites_present(square):
    res = label_all_orders(square, MetricKind.HILBERT, SITES)
    text = render_svg(square, sites=SITES, diagrams=res.diagrams,
                      timestamp=False)
    assert 'id="order-1"' in text
    assert 'id="order-2"' in text
    assert text.count("<circle") >= len(SITES)


def test_y_axis_flipped_for_screen(square):
    text = render_svg(square, sites=SITES, timestamp=False)
    assert "matrix(1 0 0 -1" in text
