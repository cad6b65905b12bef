/**
 * Session client: sequence numbering and drag throttling.
 *
 * The transport is anything with send(); the app feeds decoded frames
 * back through receive().  Site drags generate MoveSite floods, so at
 * most one MoveSite is in flight and only the latest coalesced position
 * follows once its reply lands.  Other events go out immediately; the
 * server handles frames strictly in order.
 */

import type { ErrorFrame, EventKind, Frame, Pt } from "./protocol.js";

export interface Transport {
  send(obj: object): void;
}

export class SessionClient {
  private seq = 0;
  private inflightMove: number | null = null;
  private pendingMove: { index: number; site: Pt } | null = null;

  onFrame: ((frame: Frame) => void) | null = null;
  onError: ((frame: ErrorFrame) => void) | null = null;

  constructor(private transport: Transport) {}

  /** Adopt the server's sequence counter from the connect snapshot. */
  adoptSeq(seq: number): void {
    this.seq = Math.max(this.seq, seq);
  }

  send(kind: EventKind, payload: Record<string, unknown> = {}): number {
    const seq = ++this.seq;
    this.transport.send({ kind, seq, ...payload });
    return seq;
  }

  /** Queue a site move; floods coalesce down to the newest position. */
  moveSite(index: number, site: Pt): void {
    if (this.inflightMove !== null) {
      this.pendingMove = { index, site };
      return;
    }
    this.inflightMove = this.send("MoveSite", { index, site });
  }

  /** True while a MoveSite reply is outstanding. */
  get moving(): boolean {
    return this.inflightMove !== null;
  }

  receive(frame: Frame): void {
    if (frame.seq === this.inflightMove) {
      this.inflightMove = null;
      if (this.pendingMove !== null) {
        const m = this.pendingMove;
        this.pendingMove = null;
        this.moveSite(m.index, m.site);
      }
    }
    this.adoptSeq(frame.seq);
    if (frame.kind === "Error" && this.onError) this.onError(frame);
    if (this.onFrame) this.onFrame(frame);
  }
}
