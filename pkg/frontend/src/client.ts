// Session client: builds timestamped events, keeps them monotone, buffers
// across disconnects, and replays in order on reconnect. Transport-agnostic
// so tests can drive it with a fake socket.

import type { ClientEnvelope, EventKindName, ServerMessage, WireEvent } from "./types.js";

export interface Transport {
  readonly open: boolean;
  send(envelope: ClientEnvelope): void;
}

export interface MessageHandlers {
  onAgentEvent?(event: WireEvent): void;
  onPreview?(strokes: number[][][]): void;
  onThumbnail?(message: Extract<ServerMessage, { type: "thumbnail" }>): void;
  onError?(detail: string): void;
}

export class SessionClient {
  private transport: Transport | null = null;
  private buffer: WireEvent[] = [];
  private startedAt: number | null = null;
  private lastT = 0;

  constructor(private readonly clock: () => number = () => Date.now()) {}

  markSessionStart(): void {
    this.startedAt = this.clock();
    this.lastT = 0;
  }

  /** ms since session start; never decreases even if the clock does. */
  now(): number {
    if (this.startedAt === null) {
      this.markSessionStart();
    }
    const elapsed = Math.max(0, Math.floor(this.clock() - (this.startedAt as number)));
    return Math.max(elapsed, this.lastT);
  }

  attach(transport: Transport): void {
    this.transport = transport;
    this.flush();
  }

  detach(): void {
    this.transport = null;
  }

  get pendingCount(): number {
    return this.buffer.length;
  }

  emit(kind: EventKindName, payload: Record<string, unknown> = {}, at?: number): WireEvent {
    const t = Math.max(at ?? this.now(), this.lastT);
    this.lastT = t;
    const event: WireEvent = { t, actor: "user", kind, payload };
    this.buffer.push(event);
    this.flush();
    return event;
  }

  private flush(): void {
    if (!this.transport || !this.transport.open) {
      return;
    }
    while (this.buffer.length > 0) {
      const event = this.buffer[0];
      this.transport.send({ type: "event", event });
      this.buffer.shift();
    }
  }

  dispatch(raw: unknown, handlers: MessageHandlers): void {
    const message = raw as ServerMessage;
    switch (message?.type) {
      case "event":
        handlers.onAgentEvent?.(message.event);
        break;
      case "preview":
        handlers.onPreview?.(message.strokes);
        break;
      case "thumbnail":
        handlers.onThumbnail?.(message);
        break;
      case "error":
        handlers.onError?.(message.detail);
        break;
      default:
        handlers.onError?.(`unrecognized message: ${JSON.stringify(raw)}`);
    }
  }
}

/** Emit a full pointer stroke as pen_down / pen_move* / pen_up. */
export function emitStroke(
  client: SessionClient,
  points: Array<{ x: number; y: number; t?: number }>,
  brush?: { width?: number; color?: number[] },
): WireEvent[] {
  if (points.length === 0) {
    return [];
  }
  const events: WireEvent[] = [];
  const first = points[0];
  events.push(
    client.emit(
      "pen_down",
      { x: first.x, y: first.y, ...(brush ?? {}) },
      first.t,
    ),
  );
  for (const p of points.slice(1, -1)) {
    events.push(client.emit("pen_move", { x: p.x, y: p.y }, p.t));
  }
  if (points.length > 1) {
    const last = points[points.length - 1];
    events.push(client.emit("pen_up", { x: last.x, y: last.y }, last.t));
  } else {
    events.push(client.emit("pen_up", {}));
  }
  return events;
}
