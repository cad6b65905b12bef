/**
 * Pure scene renderer: (geometry mirror, view state) -> RGBA raster.
 *
 * No hidden inputs.  Rendering twice with equal arguments must give
 * byte-identical output, which the replay test relies on.
 */

import type { GeometryState, ViewState } from "./state.js";
import { circumcenterIndicator } from "./state.js";
import type { Pt } from "./protocol.js";
import {
  Raster,
  RGBA,
  fillPolygon,
  fillRect,
  frameHash,
  strokeDiamond,
  strokePolyline,
} from "./raster.js";

const BG: RGBA = [24, 26, 32, 255];
const DOMAIN_FILL: RGBA = [245, 245, 240, 255];
const DOMAIN_EDGE: RGBA = [60, 60, 70, 255];
const EDGE: RGBA = [30, 30, 40, 255];
const BISECTOR: RGBA = [120, 120, 140, 170];
const SITE: RGBA = [10, 10, 10, 255];
const SELECT_RING: RGBA = [230, 60, 60, 255];
const OVERLAP: RGBA = [40, 160, 90, 160];
const OUTER: RGBA = [220, 140, 40, 160];
const BALL_EDGE: RGBA = [70, 110, 200, 200];
const MOSAIC_EDGE: RGBA = [160, 60, 160, 220];
const MISMATCH: RGBA = [255, 0, 80, 255];
const INDICATOR: RGBA = [255, 210, 40, 255];

/** Fill palette for order-k cells, cycled by a small label hash. */
const CELL_COLORS: RGBA[] = [
  [86, 138, 214, 150],
  [214, 134, 86, 150],
  [120, 198, 121, 150],
  [196, 110, 204, 150],
  [222, 196, 84, 150],
  [92, 196, 196, 150],
  [204, 96, 122, 150],
  [148, 160, 216, 150],
];

const CLUSTER_COLORS: RGBA[] = [
  [31, 119, 180, 255],
  [255, 127, 14, 255],
  [44, 160, 44, 255],
  [214, 39, 40, 255],
  [148, 103, 189, 255],
  [140, 86, 75, 255],
  [227, 119, 194, 255],
  [127, 127, 127, 255],
];

function cellColor(sites: number[]): RGBA {
  let h = 2166136261;
  for (const s of sites) h = Math.imul(h ^ (s + 1), 16777619);
  return CELL_COLORS[(h >>> 0) % CELL_COLORS.length];
}

export function worldToScreen(
  view: ViewState,
  width: number,
  height: number,
  p: Pt,
): [number, number] {
  const { cx, cy, scale } = view.camera;
  // world y grows up, pixel y grows down
  return [width / 2 + (p[0] - cx) * scale, height / 2 - (p[1] - cy) * scale];
}

export function renderScene(
  g: GeometryState,
  view: ViewState,
  width: number,
  height: number,
): Raster {
  const r = new Raster(width, height);
  const w2s = (p: Pt) => worldToScreen(view, width, height, p);
  r.clear(BG);

  if (g.domain.length >= 3) {
    const ring = g.domain.map(w2s);
    fillPolygon(r, ring, DOMAIN_FILL);
    strokePolyline(r, ring, DOMAIN_EDGE, 2, true);
  }

  for (const k of view.visibleOrders) {
    const diagram = g.diagrams[k];
    if (!diagram) continue;
    for (const cell of diagram.cells) {
      const color = cellColor(cell.sites);
      for (const poly of cell.polygons) {
        fillPolygon(r, poly.shell.map(w2s), color);
        for (const hole of poly.holes) {
          fillPolygon(r, hole.map(w2s), DOMAIN_FILL);
        }
      }
    }
    for (const edge of diagram.edges) {
      strokePolyline(r, edge.polyline.map(w2s), EDGE, 2);
    }
  }

  if (view.showBisectors) {
    for (const key of Object.keys(g.bisectors).sort()) {
      strokePolyline(r, g.bisectors[key].bisector.points.map(w2s), BISECTOR, 1);
    }
  }

  if (view.showRegions && g.regions) {
    const z = g.regions.overlap.polygon;
    if (z.length >= 3) {
      fillPolygon(r, z.map(w2s), OVERLAP, 3);
      strokePolyline(r, z.map(w2s), OVERLAP, 1, true);
    }
    for (const comp of g.regions.outer.components) {
      fillPolygon(r, comp.shell.map(w2s), OUTER, 3);
      strokePolyline(r, comp.shell.map(w2s), OUTER, 1, true);
    }
  }
  if (view.showBalls && g.regions) {
    strokePolyline(r, g.regions.b0.boundary.map(w2s), BALL_EDGE, 1, true);
    strokePolyline(r, g.regions.b1.boundary.map(w2s), BALL_EDGE, 1, true);
  }

  if (view.showMosaic && g.mosaic) {
    const at = new Map<string, Pt>();
    for (const node of g.mosaic.nodes) at.set(node.sites.join(","), node.point);
    for (const [a, b] of g.mosaic.edges) {
      const pa = at.get(a.join(","));
      const pb = at.get(b.join(","));
      if (pa && pb) strokePolyline(r, [w2s(pa), w2s(pb)], MOSAIC_EDGE, 2);
    }
    for (const node of g.mosaic.nodes) {
      const [x, y] = w2s(node.point);
      fillRect(r, x - 2, y - 2, 5, 5, MOSAIC_EDGE);
    }
  }

  if (view.showMismatches && g.verify) {
    for (const p of g.verify.mismatch_points) {
      const [x, y] = w2s(p);
      fillRect(r, x - 1, y - 1, 3, 3, MISMATCH);
    }
  }

  for (let i = 0; i < g.sites.length; i++) {
    const [x, y] = w2s(g.sites[i]);
    const color = g.clustering
      ? CLUSTER_COLORS[g.clustering.assignments[i] % CLUSTER_COLORS.length]
      : SITE;
    fillRect(r, x - 3, y - 3, 7, 7, color);
    if (view.selected.includes(i)) {
      strokePolyline(
        r,
        [
          [x - 5, y - 5],
          [x + 5, y - 5],
          [x + 5, y + 5],
          [x - 5, y + 5],
        ],
        SELECT_RING,
        1,
        true,
      );
    }
  }

  if (view.selected.length === 2) {
    const pair: [number, number] = [view.selected[0], view.selected[1]];
    for (let third = 0; third < g.sites.length; third++) {
      if (pair.includes(third)) continue;
      const ind = circumcenterIndicator(g, pair, third);
      for (const p of ind.points) {
        const [x, y] = w2s(p);
        strokeDiamond(r, x, y, 6, INDICATOR, 2);
      }
    }
  }
  return r;
}

export function renderHash(
  g: GeometryState,
  view: ViewState,
  width: number,
  height: number,
): string {
  return frameHash(renderScene(g, view, width, height));
}
