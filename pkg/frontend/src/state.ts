/**
 * Client-side state: a mirror of the server geometry plus purely visual
 * view state.  All geometry comes from session frames; nothing here
 * computes distances or curves.  View mutations never touch the mirror,
 * so stale-frame handling and undo stay trivial.
 */

import type {
  ClusteringJson,
  DiagramJson,
  Frame,
  LabeledJson,
  MosaicJson,
  Pt,
  RegionsJson,
  VerifyJson,
} from "./protocol.js";

export interface GeometryState {
  domain: Pt[];
  sites: Pt[];
  metric: string;
  order: number;
  serverLayers: Record<string, boolean>;
  bisectors: Record<string, LabeledJson>;
  diagrams: Record<number, DiagramJson>;
  warnings: string[];
  clustering: ClusteringJson | null;
  regions: RegionsJson | null;
  mosaic: MosaicJson | null;
  verify: VerifyJson | null;
}

export function initialGeometry(): GeometryState {
  return {
    domain: [],
    sites: [],
    metric: "hilbert",
    order: 1,
    serverLayers: {},
    bisectors: {},
    diagrams: {},
    warnings: [],
    clustering: null,
    regions: null,
    mosaic: null,
    verify: null,
  };
}

/**
 * Fold one server frame into the mirror.  GeometryUpdate frames carry
 * deltas keyed the same way as the full maps; a frame with full=true
 * starts both maps over.  Ack frames only ever touch the slice they
 * answer for.  Error frames change nothing.
 */
export function applyFrame(g: GeometryState, frame: Frame): GeometryState {
  if (frame.kind === "Error") return g;
  if (frame.kind === "Ack") {
    const next = { ...g };
    if (frame.layers) next.serverLayers = { ...frame.layers };
    if (frame.scene_text) {
      const scene = JSON.parse(frame.scene_text);
      next.domain = scene.domain ?? next.domain;
      next.metric = scene.metric ?? next.metric;
      if (scene.order) next.order = scene.order;
      if (scene.sites) next.sites = scene.sites;
    }
    if (frame.regions) next.regions = frame.regions;
    if (frame.mosaic) next.mosaic = frame.mosaic;
    if (frame.verify) next.verify = frame.verify;
    return next;
  }
  const next: GeometryState = {
    ...g,
    sites: frame.sites,
    metric: frame.metric,
    order: frame.order,
    serverLayers: { ...frame.layers },
    warnings: frame.warnings ?? [],
  };
  const bisectors = frame.full ? {} : { ...g.bisectors };
  for (const [key, value] of Object.entries(frame.bisectors ?? {})) {
    bisectors[key] = value;
  }
  for (const key of frame.removed_bisectors ?? []) delete bisectors[key];
  next.bisectors = bisectors;

  const diagrams: Record<number, DiagramJson> = frame.full
    ? {}
    : { ...g.diagrams };
  for (const d of frame.diagrams ?? []) diagrams[d.order] = d;
  for (const k of frame.removed_orders ?? []) delete diagrams[k];
  next.diagrams = diagrams;

  if (frame.clustering) next.clustering = frame.clustering;
  // geometry moved under the cached query results; drop them rather
  // than display stale region or mosaic outlines
  if ((frame.bisectors && Object.keys(frame.bisectors).length) || frame.full) {
    next.regions = null;
    next.mosaic = null;
    next.verify = null;
    if (!frame.clustering) next.clustering = null;
  }
  return next;
}

/** Highest selectable diagram order for n sites. */
export function maxOrder(g: GeometryState): number {
  return Math.max(1, g.sites.length - 1);
}

/**
 * True when the bisector of pair (i, j) carries an equidistance event
 * contributed by site `third`: the triple has a circumcenter.
 */
export function circumcenterIndicator(
  g: GeometryState,
  pair: [number, number],
  third: number,
): { exists: boolean; points: Pt[] } {
  const [a, b] = pair[0] < pair[1] ? pair : [pair[1], pair[0]];
  const lb = g.bisectors[`${a}-${b}`];
  if (!lb) return { exists: false, points: [] };
  const points = lb.events.filter((e) => e.third === third).map((e) => e.point);
  return { exists: points.length > 0, points };
}

// -- view state ---------------------------------------------------------------

export interface Camera {
  /** World coordinates of the canvas center. */
  cx: number;
  cy: number;
  /** Pixels per world unit. */
  scale: number;
}

export interface ViewState {
  camera: Camera;
  showSites: boolean;
  showBisectors: boolean;
  showMosaic: boolean;
  showRegions: boolean;
  showBalls: boolean;
  showMismatches: boolean;
  /** Diagram orders currently drawn, usually just the active one. */
  visibleOrders: number[];
  selected: number[];
  drag: { index: number; at: Pt } | null;
}

export function initialView(): ViewState {
  return {
    camera: { cx: 0.5, cy: 0.5, scale: 512 },
    showSites: true,
    showBisectors: true,
    showMosaic: false,
    showRegions: false,
    showBalls: false,
    showMismatches: false,
    visibleOrders: [1],
    selected: [],
    drag: null,
  };
}

/** Fit the camera so the domain fills the frame with a small margin. */
export function fitCamera(domain: Pt[], width: number, height: number): Camera {
  if (domain.length === 0) return { cx: 0.5, cy: 0.5, scale: 512 };
  let minx = Infinity,
    maxx = -Infinity,
    miny = Infinity,
    maxy = -Infinity;
  for (const [x, y] of domain) {
    minx = Math.min(minx, x);
    maxx = Math.max(maxx, x);
    miny = Math.min(miny, y);
    maxy = Math.max(maxy, y);
  }
  const spanx = Math.max(maxx - minx, 1e-9);
  const spany = Math.max(maxy - miny, 1e-9);
  const scale = 0.92 * Math.min(width / spanx, height / spany);
  return { cx: (minx + maxx) / 2, cy: (miny + maxy) / 2, scale };
}

/** Toggle membership of a site in the selection, capped at two sites. */
export function toggleSelect(view: ViewState, index: number): ViewState {
  const selected = view.selected.includes(index)
    ? view.selected.filter((i) => i !== index)
    : [...view.selected, index].slice(-2);
  return { ...view, selected };
}

/** Clamp the visible orders against the current site count. */
export function clampOrders(view: ViewState, g: GeometryState): ViewState {
  const hi = maxOrder(g);
  const visibleOrders = view.visibleOrders.filter((k) => k >= 1 && k <= hi);
  return {
    ...view,
    visibleOrders: visibleOrders.length ? visibleOrders : [Math.min(1, hi)],
    selected: view.selected.filter((i) => i < g.sites.length),
  };
}
