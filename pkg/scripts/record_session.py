"""Drive the session service over its socket protocol and record the frames.

Starts a server on a free port, replays a list of events (a JSON file with
[{"kind": ..., ...}, ...] or a built-in demo sequence), and appends every
frame, sent and received, to a JSONL transcript.  The transcript doubles
as a replay fixture: feeding the same events to a fresh server must
reproduce the received frames byte for byte.
"""

import argparse
import json
import pathlib
import socket
import sys
import threading

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilbert_voronoi.scene import load_scene
from hilbert_voronoi.session import SessionServer, recv_frame, send_frame

SCENES = pathlib.Path(__file__).resolve().parents[1] / "scenes"

DEMO_EVENTS = [
    {"kind": "AddSite", "site": [0.42, 0.58]},
    {"kind": "SetOrder", "order": 2},
    {"kind": "MoveSite", "index": 0, "site": [0.31, 0.33]},
    {"kind": "SetMetric", "metric": "funk"},
    {"kind": "StepClustering"},
    {"kind": "RemoveSite", "index": 1},
    {"kind": "GetScene"},
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scene", type=pathlib.Path,
                    default=SCENES / "unit_square_pair.json")
    ap.add_argument("--events", type=pathlib.Path,
                    help="JSON list of event objects; default is a demo run")
    ap.add_argument("--out", type=pathlib.Path,
                    default=pathlib.Path("out/session_transcript.jsonl"))
    args = ap.parse_args(argv)

    events = DEMO_EVENTS
    if args.events:
        events = json.loads(args.events.read_text())

    scene = load_scene(args.scene)
    server = SessionServer(scene, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    args.out.parent.mkdir(parents=True, exist_ok=True)

    try:
        with socket.create_connection(server.server_address) as sock, \
                open(args.out, "w") as log:
            def record(direction, frame):
                log.write(json.dumps({"dir": direction, "frame": frame},
                                     sort_keys=True) + "\n")

            snapshot = recv_frame(sock)
            record("recv", snapshot)
            seq = snapshot["seq"]
            for event in events:
                seq += 1
                event = {**event, "seq": seq}
                record("send", event)
                send_frame(sock, event)
                frame = recv_frame(sock)
                record("recv", frame)
                kind = frame.get("kind")
                seq = frame.get("seq")
                extras = [key for key in ("bisectors", "diagrams", "clustering")
                          if frame.get(key)]
                print(f"#{seq} {event['kind']:>14} -> {kind}"
                      f"{' (' + ', '.join(extras) + ')' if extras else ''}")
    finally:
        server.shutdown()
        server.server_close()
        thread.join()
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
