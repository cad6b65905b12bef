"""Reproduce the non-star-shaped order-2 cell in the bundled square scene.

Prints the kernel area of every order-2 cell; the cell of the upper site
pair comes out empty-kerneled (not star-shaped) while all others keep a
positive kernel.  Writes an SVG of the order-2 diagram next to the report.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilbert_voronoi.korder import is_star_shaped, label_all_orders
from hilbert_voronoi.scene import load_scene
from hilbert_voronoi.polyops import polygon_area
from hilbert_voronoi.svg_export import render_svg

SCENE = pathlib.Path(__file__).resolve().parents[1] / "scenes" / "non_star_shaped.json"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scene", type=pathlib.Path, default=SCENE)
    ap.add_argument("--svg", type=pathlib.Path,
                    default=pathlib.Path("out/non_star_shaped.svg"))
    args = ap.parse_args(argv)

    scene = load_scene(args.scene)
    domain, metric, sites, tol = scene.build()
    res = label_all_orders(domain, metric, sites, tol)
    diagram = res.diagrams[1]

    print(f"order-2 cells over {len(sites)} sites:")
    for key in sorted(diagram.cells):
        shell = diagram.cells[key][0][0]
        star, ker = is_star_shaped(list(shell))
        ker_area = polygon_area(list(ker)) if star else 0.0
        tag = "star-shaped" if star else "NOT star-shaped"
        print(f"  cell {key}: area {polygon_area(list(shell)):10.1f}  "
              f"kernel {ker_area:10.2f}  {tag}")

    args.svg.parent.mkdir(parents=True, exist_ok=True)
    args.svg.write_text(render_svg(domain, sites=sites, diagrams=[diagram],
                                   timestamp=False))
    print(f"wrote {args.svg}")


if __name__ == "__main__":
    main()
