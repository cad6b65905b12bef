"""Generate a batch of random scene files for benchmarks and demos.

Each scene is a convex domain with strictly interior sites, written in the
canonical JSON form so reruns with the same seed are byte-identical.
"""

import argparse
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilbert_voronoi.scene import Scene, save_scene
from hilbert_voronoi.scenegen import random_scene


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("out/scenes"))
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sites", type=int, nargs=2, default=(3, 8),
                    metavar=("LO", "HI"))
    ap.add_argument("--verts", type=int, nargs=2, default=(3, 10),
                    metavar=("LO", "HI"))
    ap.add_argument("--metric", default="hilbert")
    args = ap.parse_args(argv)

    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    for i in range(args.count):
        n = rng.randint(*args.sites)
        m = rng.randint(*args.verts)
        domain, sites = random_scene(rng.randrange(1 << 30), n, m)
        scene = Scene(
            domain=tuple((x, y) for x, y in zip(domain._xs, domain._ys)),
            sites=tuple((s.x, s.y) for s in sites),
            metric=args.metric)
        path = args.out / f"scene_{i:03d}.json"
        save_scene(scene, path)
        print(f"{path}  n={n} m={m}")


if __name__ == "__main__":
    main()
