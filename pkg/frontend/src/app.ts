/**
 * Browser entry point.
 *
 * Wires the WebSocket transport to the state mirror and redraws on every
 * frame or view change.  All geometry stays server-side; this file only
 * routes events and blits the raster.
 */

import { SessionClient } from "./client.js";
import type { Frame, Pt } from "./protocol.js";
import { renderScene } from "./render.js";
import {
  GeometryState,
  ViewState,
  applyFrame,
  clampOrders,
  fitCamera,
  initialGeometry,
  initialView,
  maxOrder,
  toggleSelect,
} from "./state.js";

const WIDTH = 768;
const HEIGHT = 640;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function toast(text: string): void {
  const box = el<HTMLDivElement>("toasts");
  const note = document.createElement("div");
  note.className = "toast";
  note.textContent = text;
  box.appendChild(note);
  setTimeout(() => note.remove(), 4000);
}

function main(): void {
  const canvas = el<HTMLCanvasElement>("view");
  canvas.width = WIDTH;
  canvas.height = HEIGHT;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("no 2d context");

  let geometry: GeometryState = initialGeometry();
  let view: ViewState = initialView();
  let fitted = false;

  const params = new URLSearchParams(location.search);
  const url = params.get("ws") ?? "ws://127.0.0.1:8080";
  const sock = new WebSocket(url);
  const client = new SessionClient({
    send: (obj) => sock.send(JSON.stringify(obj)),
  });

  const redraw = () => {
    const raster = renderScene(geometry, view, WIDTH, HEIGHT);
    ctx.putImageData(new ImageData(raster.data, WIDTH, HEIGHT), 0, 0);
    const slider = el<HTMLInputElement>("order");
    slider.max = String(maxOrder(geometry));
    el<HTMLSpanElement>("order-label").textContent =
      `order ${view.visibleOrders.join(",")} / ${maxOrder(geometry)}`;
    el<HTMLSpanElement>("status").textContent =
      `${geometry.sites.length} sites, ${geometry.metric}` +
      (geometry.warnings.length ? `, ${geometry.warnings.length} warnings` : "");
  };

  const refreshQueries = () => {
    if (view.selected.length === 2 && (view.showRegions || view.showBalls)) {
      client.send("GetRegions", { pair: [...view.selected] });
    }
    if (view.showMosaic && geometry.sites.length >= 2) {
      client.send("GetMosaic", { order: view.visibleOrders[0] ?? 1 });
    }
  };

  client.onFrame = (frame: Frame) => {
    geometry = applyFrame(geometry, frame);
    view = clampOrders(view, geometry);
    if (!fitted && geometry.domain.length >= 3) {
      view = { ...view, camera: fitCamera(geometry.domain, WIDTH, HEIGHT) };
      fitted = true;
    }
    redraw();
  };
  client.onError = (frame) => toast(`${frame.error}: ${frame.message}`);

  sock.onopen = () => toast("connected");
  sock.onclose = () => toast("connection closed");
  sock.onmessage = (msg) => {
    const frame = JSON.parse(String(msg.data)) as Frame;
    if (!fitted) client.adoptSeq(frame.seq);
    client.receive(frame);
    // the first frame is the snapshot; the scene text supplies the domain
    if (geometry.domain.length === 0) client.send("GetScene");
  };

  // -- pointer handling ------------------------------------------------------

  const toWorld = (ev: MouseEvent): Pt => {
    const box = canvas.getBoundingClientRect();
    const px = ev.clientX - box.left;
    const py = ev.clientY - box.top;
    const { cx, cy, scale } = view.camera;
    return [cx + (px - WIDTH / 2) / scale, cy - (py - HEIGHT / 2) / scale];
  };

  const siteAt = (p: Pt): number => {
    const reach = 8 / view.camera.scale;
    let best = -1;
    let bestD = reach;
    geometry.sites.forEach(([sx, sy], i) => {
      const d = Math.hypot(sx - p[0], sy - p[1]);
      if (d <= bestD) {
        best = i;
        bestD = d;
      }
    });
    return best;
  };

  canvas.addEventListener("mousedown", (ev) => {
    const p = toWorld(ev);
    const hit = siteAt(p);
    if (ev.shiftKey) {
      if (hit < 0) client.send("AddSite", { site: p });
      else client.send("RemoveSite", { index: hit });
      return;
    }
    if (hit >= 0) view = { ...view, drag: { index: hit, at: p } };
  });
  canvas.addEventListener("mousemove", (ev) => {
    if (!view.drag) return;
    const p = toWorld(ev);
    view = { ...view, drag: { ...view.drag, at: p } };
    client.moveSite(view.drag.index, p);
  });
  canvas.addEventListener("mouseup", (ev) => {
    if (!view.drag) return;
    const idx = view.drag.index;
    const start = view.drag.at;
    const p = toWorld(ev);
    view = { ...view, drag: null };
    if (Math.hypot(p[0] - start[0], p[1] - start[1]) * view.camera.scale < 3) {
      view = toggleSelect(view, idx);
      refreshQueries();
    }
    redraw();
  });

  // -- controls --------------------------------------------------------------

  el<HTMLInputElement>("order").addEventListener("input", (ev) => {
    const k = Number((ev.target as HTMLInputElement).value);
    view = { ...view, visibleOrders: [k] };
    client.send("SetOrder", { order: k });
  });
  el<HTMLSelectElement>("metric").addEventListener("change", (ev) => {
    client.send("SetMetric", {
      metric: (ev.target as HTMLSelectElement).value,
    });
  });
  el<HTMLButtonElement>("step").addEventListener("click", () => {
    client.send("StepClustering");
  });
  el<HTMLButtonElement>("verify").addEventListener("click", () => {
    view = { ...view, showMismatches: true };
    client.send("GetVerify", {
      order: view.visibleOrders[0] ?? 1,
      resolution: 128,
    });
  });
  const layerBox = (id: string, key: keyof ViewState) => {
    el<HTMLInputElement>(id).addEventListener("change", (ev) => {
      const on = (ev.target as HTMLInputElement).checked;
      view = { ...view, [key]: on };
      refreshQueries();
      redraw();
    });
  };
  layerBox("show-bisectors", "showBisectors");
  layerBox("show-regions", "showRegions");
  layerBox("show-balls", "showBalls");
  layerBox("show-mosaic", "showMosaic");
}

if (typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", main);
}
