"""Command line front end.

Every command reads a scene file and writes JSON (stdout or --out) and
optionally SVG.  Exit codes: 0 success, 2 geometric error, 3 I/O or
schema error; failures emit one machine-readable JSON object on stderr.
"""

from __future__ import annotations

import argparse
import sys

from .balls import ball, infinite_balls
from .bisector import trace_bisector
from .circumcenter import circumcenter_events
from .clustering import kmeans_run, single_linkage
from .errors import GeometryError, OutOfRange, ParseError, SceneIOError
from .geometry import Point, distance
from .jsonio import (
    ball_json,
    bisector_json,
    circumcenter_json,
    clustering_json,
    diagram_json,
    labeled_json,
    mosaic_json,
    regions_json,
)
from .korder import label_all_orders
from .mosaic import delaunay_mosaic
from .raster import build_oracle, verify_diagram
from .regions import outer_region, overlap_region
from .scene import Scene, dumps_canonical, load_scene
from .svg_export import render_svg


def _parse_point(text: str) -> Point:
    try:
        xs, ys = text.split(",")
        return Point(float(xs), float(ys))
    except ValueError:
        raise OutOfRange(f"expected a point as 'x,y', got {text!r}") from None


def _site(scene_sites, idx: int) -> Point:
    if not 0 <= idx < len(scene_sites):
        raise OutOfRange(f"site index {idx} outside 0..{len(scene_sites) - 1}")
    return scene_sites[idx]


def _emit(args, payload: dict, svg: str = None) -> None:
    text = dumps_canonical(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if svg is not None and args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg)


def _stamp(args):
    return False if args.no_timestamp else True


# -- command bodies ----------------------------------------------------------

def _cmd_distance(args, scene, ctx):
    dom, metric, _, tol = ctx
    p, q = _parse_point(args.p), _parse_point(args.q)
    return {"metric": metric.value, "p": [p.x, p.y], "q": [q.x, q.y],
            "distance": distance(dom, metric, p, q, tol)}, None


def _cmd_ball(args, scene, ctx):
    dom, metric, _, tol = ctx
    c = _parse_point(args.center)
    b = ball(dom, metric, c, args.radius, tol)
    svg = render_svg(dom, sites=[c], balls=[b], timestamp=_stamp(args))
    return ball_json(b), svg


def _cmd_bisector(args, scene, ctx):
    dom, metric, sites, tol = ctx
    s1, s2 = _site(sites, args.i), _site(sites, args.j)
    bis = trace_bisector(dom, metric, s1, s2, tol)
    svg = render_svg(dom, sites=sites, bisectors=[bis],
                     timestamp=_stamp(args))
    return bisector_json(bis), svg


def _cmd_circumcenter(args, scene, ctx):
    dom, metric, sites, tol = ctx
    tri = [_site(sites, idx) for idx in (args.i, args.j, args.k)]
    events = circumcenter_events(dom, metric, *tri, tol=tol)
    return {"sites": [args.i, args.j, args.k],
            "count": len(events),
            "events": [circumcenter_json(e, (args.i, args.j)) for e in events]}, None


def _cmd_voronoi(args, scene, ctx):
    dom, metric, sites, tol = ctx
    res = label_all_orders(dom, metric, sites, tol)
    if args.all:
        shown = res.diagrams
    else:
        k = args.order if args.order is not None else scene.order
        if not 1 <= k <= len(sites) - 1:
            raise OutOfRange(f"order {k} outside 1..{len(sites) - 1}")
        shown = [res.diagrams[k - 1]]
    payload = {
        "metric": metric.value,
        "orders": [diagram_json(d) for d in shown],
        "bisectors": [labeled_json(lb) for _, lb in sorted(res.bisectors.items())],
        "warnings": sorted(res.warnings),
    }
    svg = render_svg(dom, sites=sites, diagrams=shown, timestamp=_stamp(args))
    return payload, svg


def _cmd_delaunay(args, scene, ctx):
    dom, metric, sites, tol = ctx
    k = args.order if args.order is not None else scene.order
    if not 1 <= k <= len(sites) - 1:
        raise OutOfRange(f"order {k} outside 1..{len(sites) - 1}")
    res = label_all_orders(dom, metric, sites, tol)
    diagram = res.diagrams[k - 1]
    mosaic = delaunay_mosaic(diagram, tol)
    svg = render_svg(dom, sites=sites, diagrams=[diagram], mosaic=mosaic,
                     timestamp=_stamp(args))
    return mosaic_json(mosaic), svg


def _cmd_regions(args, scene, ctx):
    dom, metric, sites, tol = ctx
    s1, s2 = _site(sites, args.i), _site(sites, args.j)
    host = trace_bisector(dom, metric, s1, s2, tol)
    pair = infinite_balls(dom, host, tol)
    z = overlap_region(dom, metric, s1, s2, tol, balls=pair)
    w = outer_region(dom, metric, s1, s2, tol, balls=pair)
    svg = render_svg(dom, sites=sites, balls=[pair.b0, pair.b1],
                     regions=(z, w), timestamp=_stamp(args))
    return regions_json(z, w, pair), svg


def _cmd_cluster(args, scene, ctx):
    dom, metric, sites, tol = ctx
    cfg = dict(scene.clustering)
    method = args.method or cfg.get("method", "kmeans")
    if method in ("kmeans", "k-means"):
        k = args.count or int(cfg.get("clusters", 2))
        steps = args.steps if args.steps is not None else 100
        state = kmeans_run(dom, metric, sites, k, steps, tol)
    elif method in ("slink", "single-linkage"):
        count = args.count or int(cfg.get("clusters", 2))
        state = single_linkage(dom, metric, sites, count=count, tol=tol)
    else:
        raise OutOfRange(f"unknown clustering method {method!r}")
    svg = render_svg(dom, sites=sites, clusters=state.assignments,
                     timestamp=_stamp(args))
    return clustering_json(state), svg


def _cmd_verify(args, scene, ctx):
    dom, metric, sites, tol = ctx
    res = label_all_orders(dom, metric, sites, tol)
    oracle = build_oracle(dom, metric, sites, args.resolution)
    if args.all:
        shown = res.diagrams
    else:
        k = args.order if args.order is not None else scene.order
        if not 1 <= k <= len(sites) - 1:
            raise OutOfRange(f"order {k} outside 1..{len(sites) - 1}")
        shown = [res.diagrams[k - 1]]
    reports = [verify_diagram(oracle, d) for d in shown]
    worst = max(r["fraction"] for r in reports)
    return {"resolution": args.resolution, "worst_fraction": worst,
            "orders": reports}, None


def _cmd_serve(args, scene, ctx):
    from .session import serve
    serve(scene, host=args.host, port=args.port)
    return None, None


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hilbert-voronoi",
        description="Voronoi diagrams of all orders in polygonal Hilbert-type "
                    "geometries: balls, bisectors, circumcenters, mosaics, "
                    "clustering and raster verification.")
    ap.add_argument("--scene", required=True, help="scene JSON file")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    ap.add_argument("--svg", help="also write an SVG rendering here")
    ap.add_argument("--no-timestamp", action="store_true",
                    help="omit the generation timestamp comment in SVG")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="metric distance between two points")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(run=_cmd_distance)

    p = sub.add_parser("ball", help="metric ball boundary polygon")
    p.add_argument("center")
    p.add_argument("radius", type=float)
    p.set_defaults(run=_cmd_ball)

    p = sub.add_parser("bisector", help="equidistance curve of two sites")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(run=_cmd_bisector)

    p = sub.add_parser("circumcenter",
                       help="equidistance events of three sites")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(run=_cmd_circumcenter)

    p = sub.add_parser("voronoi", help="order-k diagrams with labeled edges")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--order", type=int)
    g.add_argument("--all", action="store_true")
    p.set_defaults(run=_cmd_voronoi)

    p = sub.add_parser("delaunay", help="mosaic dual to an order-k diagram")
    p.add_argument("--order", type=int)
    p.set_defaults(run=_cmd_delaunay)

    p = sub.add_parser("regions", help="overlap and outer regions of a pair")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(run=_cmd_regions)

    p = sub.add_parser("cluster", help="cluster the sites under the metric")
    p.add_argument("--method", choices=["kmeans", "slink"])
    p.add_argument("--steps", type=int)
    p.add_argument("--count", type=int)
    p.set_defaults(run=_cmd_cluster)

    p = sub.add_parser("verify", help="raster-oracle check of the diagrams")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--order", type=int)
    g.add_argument("--all", action="store_true")
    p.add_argument("--resolution", type=int, default=400)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(run=_cmd_serve)
    return ap


def _fail(code: int, err: Exception) -> int:
    info = {"error": type(err).__name__, "message": str(err)}
    if isinstance(err, ParseError):
        info["line"] = err.line
        info["column"] = err.column
    sys.stderr.write(dumps_canonical(info))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scene = load_scene(args.scene)
        ctx = scene.build()
    except (SceneIOError, OSError) as e:
        return _fail(3, e)
    except GeometryError as e:
        return _fail(2, e)
    try:
        payload, svg = args.run(args, scene, ctx)
    except GeometryError as e:
        return _fail(2, e)
    except (SceneIOError, OSError) as e:
        return _fail(3, e)
    if payload is not None:
        try:
            _emit(args, payload, svg)
        except OSError as e:
            return _fail(3, e)
    return 0
