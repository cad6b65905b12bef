"""Scene persistence with a canonical JSON form.

The writer renders floats at 17 significant digits, sorts object keys and
uses a fixed layout, so identical scenes produce identical bytes and the
files are stable under load/save round trips.  Unknown top-level fields
are kept verbatim so newer writers can pass through older readers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .config import DEFAULT_TOL, Tolerances
from .errors import ParseError, SchemaMismatch
from .geometry import ConvexDomain, MetricKind, Point, build_domain

SCHEMA = "hilbert-voronoi-scene/1"

DEFAULT_LAYERS = {"balls": False, "bisectors": True, "regions": False,
                  "mosaic": False, "raster": False}
DEFAULT_CLUSTERING = {"method": "kmeans", "clusters": 2}


@dataclass
class Scene:
    domain: list                      # [[x, y], ...] counterclockwise
    sites: list                       # [[x, y], ...]
    metric: str = "hilbert"
    order: int = 1
    layers: dict = field(default_factory=lambda: dict(DEFAULT_LAYERS))
    clustering: dict = field(default_factory=lambda: dict(DEFAULT_CLUSTERING))
    tolerances: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def build(self):
        """Realize (domain, metric, sites, tolerances) from the record."""
        dom = build_domain(self.domain)
        try:
            metric = MetricKind(self.metric)
        except ValueError:
            raise SchemaMismatch(f"unknown metric {self.metric!r}")
        sites = [Point(float(x), float(y)) for x, y in self.sites]
        tol = DEFAULT_TOL.override(**self.tolerances)
        return dom, metric, sites, tol


# -- canonical writer --------------------------------------------------------

def _fmt_num(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return repr(v)
    if not math.isfinite(v):
        raise ValueError("non-finite number in scene data")
    s = format(v, ".17g")
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def _inline(v) -> bool:
    return (isinstance(v, (list, tuple))
            and all(isinstance(x, (int, float)) for x in v))


def _emit(v, out, ind):
    pad = "  " * ind
    if isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(v)
        for i, k in enumerate(keys):
            out.append(f'{pad}  {json.dumps(k)}: ')
            _emit(v[k], out, ind + 1)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    elif isinstance(v, (list, tuple)):
        if not v:
            out.append("[]")
            return
        if _inline(v):
            out.append("[" + ", ".join(_fmt_num(x) for x in v) + "]")
            return
        out.append("[\n")
        for i, x in enumerate(v):
            out.append(pad + "  ")
            _emit(x, out, ind + 1)
            out.append(",\n" if i + 1 < len(v) else "\n")
        out.append(pad + "]")
    elif isinstance(v, (bool, int, float)):
        out.append(_fmt_num(v))
    elif isinstance(v, str):
        out.append(json.dumps(v))
    elif v is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps_canonical(obj) -> str:
    out = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


# -- load / save -------------------------------------------------------------

_KNOWN = ("schema", "domain", "sites", "metric", "order", "layers",
          "clustering", "tolerances")


def loads_scene(text: str) -> Scene:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(raw, dict):
        raise SchemaMismatch("scene file must hold a JSON object")
    schema = raw.get("schema")
    if schema != SCHEMA:
        raise SchemaMismatch(f"expected schema {SCHEMA!r}, found {schema!r}")
    for key in ("domain", "sites"):
        v = raw.get(key)
        if (not isinstance(v, list)
                or any(not isinstance(p, list) or len(p) != 2
                       or any(not isinstance(c, (int, float))
                              or isinstance(c, bool) for c in p)
                       for p in v)):
            raise SchemaMismatch(f"{key!r} must be a list of [x, y] pairs")
    extra = {k: v for k, v in raw.items() if k not in _KNOWN}
    return Scene(
        domain=raw["domain"],
        sites=raw["sites"],
        metric=raw.get("metric", "hilbert"),
        order=raw.get("order", 1),
        layers={**DEFAULT_LAYERS, **raw.get("layers", {})},
        clustering={**DEFAULT_CLUSTERING, **raw.get("clustering", {})},
        tolerances=raw.get("tolerances", {}),
        extra=extra,
    )


def dumps_scene(scene: Scene) -> str:
    body = {
        "schema": SCHEMA,
        "domain": scene.domain,
        "sites": scene.sites,
        "metric": scene.metric,
        "order": scene.order,
        "layers": scene.layers,
        "clustering": scene.clustering,
        "tolerances": scene.tolerances,
    }
    overlap = set(body) & set(scene.extra)
    if overlap:
        raise SchemaMismatch(f"extra fields shadow scene fields: {sorted(overlap)}")
    body.update(scene.extra)
    return dumps_canonical(body)


def load_scene(source) -> Scene:
    if hasattr(source, "read"):
        return loads_scene(source.read())
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ParseError(str(e)) from None
    return loads_scene(text)


def save_scene(scene: Scene, dest) -> None:
    text = dumps_scene(scene)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)


def scene_from_geometry(domain: ConvexDomain, sites, metric: MetricKind,
                        **kw) -> Scene:
    return Scene(domain=[[v.x, v.y] for v in domain.vertices],
                 sites=[[p[0], p[1]] for p in sites],
                 metric=metric.value, **kw)
