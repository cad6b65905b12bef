"""Interactive session service over a local TCP socket.

Wire format: 4-byte big-endian length followed by one UTF-8 JSON object.
Requests are events ``{"kind", "seq", ...payload}`` with strictly
increasing sequence numbers; every request gets exactly one response
frame (``GeometryUpdate``, ``Ack`` or ``Error``) echoing the sequence
number.  Events are the only mutation path, and a failed event leaves the
session state untouched.

Recompute granularity: bisector traces and circumcenter events are
cached by the coordinates of the sites involved, so moving one site only
retraces its own bisectors and the event scans of triples containing it.
Responses carry just the bisectors and diagrams whose serialized form
changed; ``LoadScene`` and domain edits reset the cache and send
everything (``full: true``).
"""

from __future__ import annotations

import json
import socket
import socketserver
import struct

from .balls import infinite_balls
from .clustering import kmeans_init, kmeans_step, single_linkage
from .errors import GeometryError, OutsideDomain, SceneIOError
from .geometry import MetricKind, Point
from .jsonio import (clustering_json, diagram_json, labeled_json,
                     mosaic_json, regions_json)
from .korder import label_all_orders
from .mosaic import delaunay_mosaic
from .raster import build_oracle, mismatch_points, verify_diagram
from .regions import outer_region, overlap_region
from .scene import Scene, loads_scene, dumps_scene

_EVENT_KINDS = ("AddSite", "MoveSite", "RemoveSite", "SetOrder",
                "ToggleLayer", "StepClustering", "SetMetric", "LoadScene",
                "GetScene", "GetRegions", "GetMosaic", "GetVerify")


class ProtocolError(Exception):
    pass


# -- framing -----------------------------------------------------------------

def send_frame(sock: socket.socket, obj: dict) -> None:
    data = json.dumps(obj, sort_keys=True).encode()
    sock.sendall(struct.pack(">I", len(data)) + data)


def recv_frame(sock: socket.socket):
    head = _read_exact(sock, 4)
    if head is None:
        return None
    (length,) = struct.unpack(">I", head)
    if length > 64 * 1024 * 1024:
        raise ProtocolError(f"frame of {length} bytes exceeds the limit")
    body = _read_exact(sock, length)
    if body is None:
        raise ProtocolError("connection closed mid-frame")
    return json.loads(body.decode())


def _read_exact(sock, n):
    buf = b""
    while len(buf) < n:
        chunk = sock.recv(n - len(buf))
        if not chunk:
            return None if not buf else buf or None
        buf += chunk
    return buf


# -- session core ------------------------------------------------------------

class Session:
    """Single-scene session state machine, socket-free for direct use."""

    def __init__(self, scene: Scene):
        self.scene = scene
        self.last_seq = -1
        self._cache = {}
        self._clustering = None
        self._slink_full = None
        self._last_bis = {}
        self._last_diag = {}
        self._last_res = None
        self._recompute(raise_errors=True)

    # -- geometry ------------------------------------------------------------

    def _recompute(self, raise_errors=False):
        dom, metric, sites, tol = self.scene.build()
        if len(sites) >= 2:
            res = label_all_orders(dom, metric, sites, tol,
                                   cache=self._cache)
            bis = {f"{i}-{j}": labeled_json(lb)
                   for (i, j), lb in res.bisectors.items()}
            diag = {d.k: diagram_json(d) for d in res.diagrams}
            warnings = sorted(res.warnings)
            self._last_res = res
        else:
            bis, diag, warnings = {}, {}, []
            self._last_res = None
        changed_b = {p: v for p, v in bis.items()
                     if self._last_bis.get(p) != v}
        removed_b = sorted(set(self._last_bis) - set(bis))
        changed_d = [v for k, v in sorted(diag.items())
                     if self._last_diag.get(k) != v]
        removed_d = sorted(set(self._last_diag) - set(diag))
        self._last_bis, self._last_diag = bis, diag
        return {"bisectors": changed_b, "removed_bisectors": removed_b,
                "diagrams": changed_d, "removed_orders": removed_d,
                "warnings": warnings}

    def _geometry_update(self, seq, delta, full=False, extras=None):
        out = {"kind": "GeometryUpdate", "seq": seq, "full": full,
               "sites": [list(map(float, s)) for s in self.scene.sites],
               "metric": self.scene.metric,
               "order": self.scene.order,
               "layers": dict(self.scene.layers)}
        out.update(delta)
        if extras:
            out.update(extras)
        return out

    # -- event handling ------------------------------------------------------

    def handle(self, event) -> dict:
        seq = event.get("seq") if isinstance(event, dict) else None
        if not isinstance(seq, int):
            return {"kind": "Error", "seq": -1, "error": "ProtocolError",
                    "message": "event must carry an integer seq"}
        if seq <= self.last_seq:
            return {"kind": "Error", "seq": seq, "error": "ProtocolError",
                    "message": f"seq {seq} not above {self.last_seq}"}
        kind = event.get("kind")
        if kind not in _EVENT_KINDS:
            self.last_seq = seq
            return {"kind": "Error", "seq": seq, "error": "ProtocolError",
                    "message": f"unknown event kind {kind!r}"}
        handler = getattr(self, "_on_" + kind)
        try:
            response = handler(seq, event)
        except (GeometryError, SceneIOError, ProtocolError, KeyError,
                ValueError, TypeError) as e:
            response = {"kind": "Error", "seq": seq,
                        "error": type(e).__name__, "message": str(e)}
        self.last_seq = seq
        return response

    def _with_sites(self, seq, sites, full=False):
        old = self.scene.sites
        self.scene.sites = sites
        try:
            delta = self._recompute()
        except Exception:
            self.scene.sites = old
            raise
        self._clustering = None
        self._slink_full = None
        return self._geometry_update(seq, delta, full=full)

    def _check_site(self, x, y):
        dom, _, _, tol = self.scene.build()
        dom.require_interior(Point(float(x), float(y)), tol)

    def _on_AddSite(self, seq, ev):
        x, y = ev["site"]
        self._check_site(x, y)
        return self._with_sites(seq, self.scene.sites + [[float(x), float(y)]])

    def _on_MoveSite(self, seq, ev):
        i = ev["index"]
        sites = [list(s) for s in self.scene.sites]
        if not 0 <= i < len(sites):
            raise ProtocolError(f"site index {i} out of range")
        x, y = ev["site"]
        self._check_site(x, y)
        sites[i] = [float(x), float(y)]
        return self._with_sites(seq, sites)

    def _on_RemoveSite(self, seq, ev):
        i = ev["index"]
        sites = [list(s) for s in self.scene.sites]
        if not 0 <= i < len(sites):
            raise ProtocolError(f"site index {i} out of range")
        del sites[i]
        if self.scene.order > max(1, len(sites) - 1):
            self.scene.order = max(1, len(sites) - 1)
        return self._with_sites(seq, sites)

    def _on_SetOrder(self, seq, ev):
        k = ev["order"]
        n = len(self.scene.sites)
        if not isinstance(k, int) or not 1 <= k <= max(1, n - 1):
            raise ProtocolError(f"order {k} outside 1..{max(1, n - 1)}")
        self.scene.order = k
        sel = self._last_diag.get(k)
        return self._geometry_update(
            seq, {"bisectors": {}, "removed_bisectors": [],
                  "diagrams": [sel] if sel else [], "removed_orders": [],
                  "warnings": []})

    def _on_ToggleLayer(self, seq, ev):
        name = ev["layer"]
        if name not in self.scene.layers:
            raise ProtocolError(f"unknown layer {name!r}")
        self.scene.layers[name] = not self.scene.layers[name]
        return {"kind": "Ack", "seq": seq,
                "layers": dict(self.scene.layers)}

    def _on_SetMetric(self, seq, ev):
        name = ev["metric"]
        MetricKind(name)  # validates
        old = self.scene.metric
        self.scene.metric = name
        try:
            delta = self._recompute()
        except Exception:
            self.scene.metric = old
            raise
        self._clustering = None
        self._slink_full = None
        return self._geometry_update(seq, delta, full=True)

    def _on_StepClustering(self, seq, ev):
        dom, metric, sites, tol = self.scene.build()
        cfg = self.scene.clustering
        method = cfg.get("method", "kmeans")
        want = max(1, min(int(cfg.get("clusters", 2)), len(sites)))
        if method == "kmeans":
            if self._clustering is None:
                self._clustering = kmeans_init(dom, metric, sites, want, tol)
            else:
                if self._clustering.converged:
                    return self._geometry_update(
                        seq, {"no_change": True},
                        extras={"clustering":
                                clustering_json(self._clustering)})
                self._clustering = kmeans_step(self._clustering, dom, metric,
                                               sites, tol)
        else:
            if self._slink_full is None:
                self._slink_full = single_linkage(dom, metric, sites,
                                                  count=1, tol=tol)
                merges = 0
            else:
                merges = min(self._clustering.step + 1,
                             len(self._slink_full.merge_history))
                if merges == self._clustering.step:
                    return self._geometry_update(
                        seq, {"no_change": True},
                        extras={"clustering":
                                clustering_json(self._clustering)})
            self._clustering = single_linkage(
                dom, metric, sites, count=len(sites) - merges, tol=tol)
        return self._geometry_update(
            seq, {}, extras={"clustering": clustering_json(self._clustering)})

    def _on_LoadScene(self, seq, ev):
        new = loads_scene(json.dumps(ev["scene"]))
        new.build()  # validate before committing
        self.scene = new
        self._cache = {}
        self._clustering = None
        self._slink_full = None
        self._last_bis = {}
        self._last_diag = {}
        delta = self._recompute()
        return self._geometry_update(seq, delta, full=True)

    def _on_GetScene(self, seq, ev):
        return {"kind": "Ack", "seq": seq,
                "scene_text": dumps_scene(self.scene)}

    # -- read-only geometry queries ------------------------------------------

    def _require_result(self):
        if self._last_res is None:
            raise ProtocolError("query needs at least two sites")
        return self._last_res

    def _on_GetRegions(self, seq, ev):
        i, j = ev["pair"]
        res = self._require_result()
        dom, metric, sites, tol = self.scene.build()
        n = len(sites)
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ProtocolError("pair must be two site indices")
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ProtocolError(f"pair ({i}, {j}) invalid for {n} sites")
        if i > j:
            i, j = j, i
        host = res.bisectors[(i, j)].bisector
        pair = infinite_balls(dom, host, tol)
        z = overlap_region(dom, metric, sites[i], sites[j], tol, balls=pair)
        w = outer_region(dom, metric, sites[i], sites[j], tol, balls=pair)
        return {"kind": "Ack", "seq": seq, "pair": [i, j],
                "regions": regions_json(z, w, pair)}

    def _on_GetMosaic(self, seq, ev):
        res = self._require_result()
        _, _, sites, tol = self.scene.build()
        k = ev.get("order", self.scene.order)
        if not isinstance(k, int) or not 1 <= k <= len(res.diagrams):
            raise ProtocolError(f"order {k} outside 1..{len(res.diagrams)}")
        mosaic = delaunay_mosaic(res.diagrams[k - 1], tol)
        return {"kind": "Ack", "seq": seq,
                "mosaic": mosaic_json(mosaic)}

    def _on_GetVerify(self, seq, ev):
        res = self._require_result()
        dom, metric, sites, _ = self.scene.build()
        k = ev.get("order", self.scene.order)
        if not isinstance(k, int) or not 1 <= k <= len(res.diagrams):
            raise ProtocolError(f"order {k} outside 1..{len(res.diagrams)}")
        resolution = ev.get("resolution", 128)
        if not isinstance(resolution, int) or not 64 <= resolution <= 512:
            raise ProtocolError("resolution outside 64..512")
        oracle = build_oracle(dom, metric, sites, resolution)
        diagram = res.diagrams[k - 1]
        report = verify_diagram(oracle, diagram)
        report["mismatch_points"] = [
            [x, y] for x, y in mismatch_points(oracle, diagram)]
        return {"kind": "Ack", "seq": seq, "verify": report}


# -- TCP server --------------------------------------------------------------

class _Handler(socketserver.BaseRequestHandler):
    def handle(self):
        session = self.server.session
        snapshot = session._geometry_update(
            session.last_seq,
            {"bisectors": dict(session._last_bis), "removed_bisectors": [],
             "diagrams": [v for _, v in sorted(session._last_diag.items())],
             "removed_orders": [], "warnings": []},
            full=True)
        send_frame(self.request, snapshot)
        while True:
            try:
                event = recv_frame(self.request)
            except (ProtocolError, json.JSONDecodeError) as e:
                send_frame(self.request, {
                    "kind": "Error", "seq": -1,
                    "error": type(e).__name__, "message": str(e)})
                return
            except ConnectionError:
                return
            if event is None:
                return
            send_frame(self.request, session.handle(event))


class SessionServer(socketserver.TCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, scene: Scene, host="127.0.0.1", port=8765):
        self.session = Session(scene)
        super().__init__((host, port), _Handler)


def serve(scene: Scene, host="127.0.0.1", port=8765) -> None:
    with SessionServer(scene, host, port) as server:
        server.serve_forever()
