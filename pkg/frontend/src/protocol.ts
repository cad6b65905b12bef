/**
 * Wire types and framing for the geometry session service.
 *
 * The service speaks length-prefixed JSON over a local TCP socket: every
 * frame is a 4-byte big-endian byte count followed by one UTF-8 JSON
 * object.  The browser reaches it through a WebSocket bridge that strips
 * and restores the prefix, so the codec here is used by the bridge and by
 * node-side tests; the browser sees whole JSON messages.
 */

export type Pt = [number, number];

export interface BisectorJson {
  s1: Pt;
  s2: Pt;
  metric: string;
  points: Pt[];
  t: number[];
  pieces: { t_lo: number; t_hi: number }[];
  endpoint_edges: [number, number];
  length: number;
}

export interface BallJson {
  center: Pt;
  radius: number;
  metric: string;
  boundary: Pt[];
}

export interface EventJson {
  third: number;
  t: number;
  point: Pt;
  radius: number;
  id: string;
  near_boundary: boolean;
  recovered: boolean;
}

export interface PortionJson {
  t_lo: number;
  t_hi: number;
  order: number;
}

export interface LabeledJson {
  pair: [number, number];
  bisector: BisectorJson;
  events: EventJson[];
  portions: PortionJson[];
}

export interface DiagramEdgeJson {
  pair: [number, number];
  t_lo: number;
  t_hi: number;
  polyline: Pt[];
}

export interface DiagramCellJson {
  sites: number[];
  polygons: { shell: Pt[]; holes: Pt[][] }[];
}

export interface DiagramJson {
  order: number;
  edges: DiagramEdgeJson[];
  cells: DiagramCellJson[];
  vertices: { id: string; point: Pt }[];
}

export interface RegionsJson {
  pair: [Pt, Pt];
  overlap: { polygon: Pt[] };
  outer: { components: { shell: Pt[]; holes: Pt[][] }[] };
  b0: BallJson;
  b1: BallJson;
  limit_inset: number;
}

export interface MosaicNodeJson {
  sites: number[];
  point: Pt;
  objective: number;
  iterations: number;
  converged: boolean;
  clamped: boolean;
}

export interface MosaicJson {
  order: number;
  nodes: MosaicNodeJson[];
  edges: [number[], number[]][];
}

export interface ClusteringJson {
  method: string;
  assignments: number[];
  step: number;
  converged: boolean;
  centers?: Pt[];
  objective?: number;
  merges?: [number, number, number][];
}

export interface VerifyJson {
  k: number;
  resolution: number;
  considered: number;
  mismatched: number;
  fraction: number;
  excluded: number;
  sites: number;
  mismatch_points: Pt[];
}

export interface GeometryUpdate {
  kind: "GeometryUpdate";
  seq: number;
  full: boolean;
  sites: Pt[];
  metric: string;
  order: number;
  layers: Record<string, boolean>;
  bisectors?: Record<string, LabeledJson>;
  removed_bisectors?: string[];
  diagrams?: DiagramJson[];
  removed_orders?: number[];
  warnings?: string[];
  clustering?: ClusteringJson;
  no_change?: boolean;
}

export interface AckFrame {
  kind: "Ack";
  seq: number;
  layers?: Record<string, boolean>;
  scene_text?: string;
  pair?: [number, number];
  regions?: RegionsJson;
  mosaic?: MosaicJson;
  verify?: VerifyJson;
}

export interface ErrorFrame {
  kind: "Error";
  seq: number;
  error: string;
  message: string;
}

export type Frame = GeometryUpdate | AckFrame | ErrorFrame;

export type EventKind =
  | "AddSite"
  | "MoveSite"
  | "RemoveSite"
  | "SetOrder"
  | "ToggleLayer"
  | "StepClustering"
  | "SetMetric"
  | "LoadScene"
  | "GetScene"
  | "GetRegions"
  | "GetMosaic"
  | "GetVerify";

export interface SessionEvent {
  kind: EventKind;
  seq: number;
  [key: string]: unknown;
}

/** Serialize one frame with its 4-byte big-endian length prefix. */
export function encodeFrame(obj: object): Uint8Array {
  const body = new TextEncoder().encode(JSON.stringify(obj));
  const out = new Uint8Array(4 + body.length);
  new DataView(out.buffer).setUint32(0, body.length, false);
  out.set(body, 4);
  return out;
}

/**
 * Incremental decoder for the TCP byte stream.  Frames can arrive split
 * across chunks or several to a chunk; push() returns every frame that
 * completed with the new bytes.
 */
export class FrameDecoder {
  private buf = new Uint8Array(0);

  push(chunk: Uint8Array): Frame[] {
    const joined = new Uint8Array(this.buf.length + chunk.length);
    joined.set(this.buf, 0);
    joined.set(chunk, this.buf.length);
    this.buf = joined;
    const frames: Frame[] = [];
    for (;;) {
      if (this.buf.length < 4) break;
      const view = new DataView(this.buf.buffer, this.buf.byteOffset);
      const size = view.getUint32(0, false);
      if (this.buf.length < 4 + size) break;
      const body = this.buf.subarray(4, 4 + size);
      frames.push(JSON.parse(new TextDecoder().decode(body)) as Frame);
      this.buf = this.buf.subarray(4 + size);
    }
    return frames;
  }

  /** Bytes sitting in the buffer that do not yet form a frame. */
  pending(): number {
    return this.buf.length;
  }
}
