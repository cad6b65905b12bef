#!/usr/bin/env python3
"""Record real session transcripts for the frontend test suite.

Talks to the geometry engine only through its public surfaces: the TCP
session protocol and the command line tool.  Two fixtures come out:

  test/fixtures/replay_200.jsonl   200-event interactive session, every
                                   frame in both directions
  test/fixtures/region_drag.json   a third site dragged across the
                                   overlap region boundary, with the CLI
                                   circumcenter count at every step

Rerun after engine changes, then refresh the pinned frame hash with
scripts/pin-hash.mjs (see that file).
"""

import gzip
import json
import math
import pathlib
import socket
import subprocess
import sys
import tempfile
import threading

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT.parent / "src"))

from hilbert_voronoi.scene import loads_scene  # noqa: E402
from hilbert_voronoi.session import (  # noqa: E402
    SessionServer, recv_frame, send_frame,
)

SCENE_TEXT = json.dumps({
    "schema": "hilbert-voronoi-scene/1",
    "domain": [[0, 0], [1, 0], [1, 1], [0, 1]],
    "sites": [[0.3, 0.45], [0.68, 0.52], [0.49, 0.7]],
    "metric": "hilbert",
    "clustering": {"method": "kmeans", "clusters": 2},
})


def run_session(scene_text, events, per_event=None):
    """Feed events through a live server; [(dir, frame), ...] transcript."""
    server = SessionServer(loads_scene(scene_text), port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    log = []
    try:
        sock = socket.create_connection(server.server_address, timeout=60)
        snapshot = recv_frame(sock)
        log.append(("recv", snapshot))
        seq = snapshot["seq"]
        for event in events:
            seq += 1
            event = {**event, "seq": seq}
            send_frame(sock, event)
            log.append(("send", event))
            reply = recv_frame(sock)
            log.append(("recv", reply))
            if per_event is not None:
                per_event(event, reply)
        sock.close()
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
    return log


# -- fixture 1: 200-event replay ----------------------------------------------

def sweep(i):
    """Deterministic drag path for the moving sites."""
    a = 0.13 * i
    idx = i % 3
    x = 0.5 + 0.27 * math.cos(a + 2.1 * idx)
    y = 0.5 + 0.24 * math.sin(2.0 * a + 1.3 * idx)
    return idx, [round(x, 6), round(y, 6)]


def replay_events():
    ev = [{"kind": "GetScene"}]
    ev.append({"kind": "AddSite", "site": [0.82, 0.18]})
    for i in range(50):
        idx, site = sweep(i)
        ev.append({"kind": "MoveSite", "index": idx, "site": site})
        if i % 15 == 14:
            ev.append({"kind": "SetOrder", "order": 1 + (i // 15) % 3})
    for name in ("funk", "thompson", "hilbert"):
        ev.append({"kind": "SetMetric", "metric": name})
        for i in range(8):
            idx, site = sweep(60 + i)
            ev.append({"kind": "MoveSite", "index": idx, "site": site})
    ev.append({"kind": "RemoveSite", "index": 3})
    ev.append({"kind": "ToggleLayer", "layer": "balls"})
    ev.append({"kind": "ToggleLayer", "layer": "bisectors"})
    for _ in range(6):
        ev.append({"kind": "StepClustering"})
    for i in range(70):
        idx, site = sweep(100 + i)
        ev.append({"kind": "MoveSite", "index": idx, "site": site})
        if i % 23 == 22:
            ev.append({"kind": "GetRegions", "pair": [i % 2, 2]})
    ev.append({"kind": "LoadScene", "scene": json.loads(SCENE_TEXT)})
    for i in range(29):
        idx, site = sweep(200 + i)
        ev.append({"kind": "MoveSite", "index": idx, "site": site})
    ev.append({"kind": "ToggleLayer", "layer": "balls"})
    ev.append({"kind": "SetOrder", "order": 2})
    ev.append({"kind": "GetRegions", "pair": [0, 1]})
    ev.append({"kind": "GetMosaic", "order": 2})
    ev.append({"kind": "GetVerify", "order": 2, "resolution": 96})
    ev.append({"kind": "GetScene"})
    return ev


def make_replay(out_dir):
    events = replay_events()
    assert len(events) == 200, f"composed {len(events)} events, want 200"
    log = run_session(SCENE_TEXT, events)
    errors = [f for d, f in log if d == "recv" and f["kind"] == "Error"]
    assert not errors, f"transcript contains Error frames: {errors[:2]}"
    path = out_dir / "replay_200.jsonl.gz"
    body = "".join(json.dumps({"dir": direction, "frame": frame},
                              sort_keys=True) + "\n"
                   for direction, frame in log)
    # mtime=0 keeps the archive byte-stable across regenerations
    with gzip.GzipFile(path, "wb", mtime=0) as fh:
        fh.write(body.encode())
    print(f"wrote {path} ({len(log)} lines, {len(events)} events)")


# -- fixture 2: region boundary drag -----------------------------------------

def cli_circumcenter_count(scene_text):
    with tempfile.NamedTemporaryFile("w", suffix=".json",
                                     delete=False) as fh:
        fh.write(scene_text)
        path = fh.name
    try:
        proc = subprocess.run(
            ["hilbert-voronoi", "--scene", path, "circumcenter",
             "0", "1", "2"],
            capture_output=True, text=True, check=True)
        return json.loads(proc.stdout)["count"]
    finally:
        pathlib.Path(path).unlink()


def make_region_drag(out_dir):
    ys = [0.5 + 0.045 * i for i in range(9)]           # 0.50 up to 0.86
    ys += list(reversed(ys[:-1]))                      # and back down
    steps = []
    state = {}

    def on_event(event, reply):
        if event["kind"] == "MoveSite":
            state["move"] = (event["site"], reply)
        elif event["kind"] == "GetScene":
            site, frame = state.pop("move")
            steps.append({
                "site": site,
                "frame": frame,
                "scene_frame": reply,
                "cli_count": cli_circumcenter_count(reply["scene_text"]),
            })

    events = []
    for y in ys:
        events.append({"kind": "MoveSite", "index": 2,
                       "site": [0.49, round(y, 6)]})
        events.append({"kind": "GetScene"})
    log = run_session(SCENE_TEXT, events, per_event=on_event)

    snapshot = log[0][1]
    kinds = [s["cli_count"] > 0 for s in steps]
    flips = sum(1 for a, b in zip(kinds, kinds[1:]) if a != b)
    assert True in kinds and False in kinds, "drag never crossed the boundary"
    assert flips >= 2, f"want flips in both directions, saw {flips}"
    path = out_dir / "region_drag.json.gz"
    body = json.dumps(
        {"snapshot": snapshot, "pair": [0, 1], "third": 2, "steps": steps},
        sort_keys=True) + "\n"
    with gzip.GzipFile(path, "wb", mtime=0) as fh:
        fh.write(body.encode())
    print(f"wrote {path} ({len(steps)} steps, {flips} indicator flips)")


if __name__ == "__main__":
    out = ROOT / "test" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    make_replay(out)
    make_region_drag(out)
