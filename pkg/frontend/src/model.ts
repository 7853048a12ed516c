// Canvas view model, DOM-free: folds local pointer input and streamed agent
// events into drawable stroke state, the speech bubble, avatar animation,
// preview lines, and the pending thumbnail. Rendering mirrors this model
// exactly; no analysis happens here.

import type { ServerMessage, StrokeState, WireEvent } from "./types.js";

export interface PendingArtifact {
  kind: "sketch" | "image";
  label?: string;
  strokes?: number[][][];
  data?: string;
}

export class CanvasModel {
  strokes: StrokeState[] = [];
  current: StrokeState | null = null; // user's optimistic in-flight stroke
  agentCurrent: StrokeState | null = null;
  speech = "";
  animation: "" | "jump" | "frown" = "";
  preview: number[][][] = [];
  pending: PendingArtifact | null = null;
  agentDrawing = false;

  beginLocalStroke(x: number, y: number, width: number, color: number[]): void {
    this.current = { actor: "user", points: [[x, y]], width, color };
  }

  extendLocalStroke(x: number, y: number): void {
    this.current?.points.push([x, y]);
  }

  endLocalStroke(x?: number, y?: number): void {
    if (!this.current) {
      return;
    }
    if (x !== undefined && y !== undefined) {
      this.current.points.push([x, y]);
    }
    this.strokes.push(this.current);
    this.current = null;
  }

  clear(): void {
    this.strokes = [];
    this.current = null;
    this.agentCurrent = null;
    this.preview = [];
  }

  /** Replace local state from the server's stroke snapshot (reconnect). */
  reset(strokes: StrokeState[]): void {
    this.strokes = strokes.slice();
    this.current = null;
    this.agentCurrent = null;
  }

  applyAgentEvent(event: WireEvent): void {
    switch (event.kind) {
      case "agent_speech":
        this.speech = String(event.payload.text ?? "");
        break;
      case "agent_animation":
        this.animation = event.payload.name === "jump" ? "jump" : "frown";
        break;
      case "agent_stroke_begin":
        this.agentDrawing = true;
        this.preview = [];
        break;
      case "agent_stroke_end":
        this.agentDrawing = false;
        if (this.agentCurrent) {
          // aborted mid-stroke: keep what was drawn
          this.strokes.push(this.agentCurrent);
          this.agentCurrent = null;
        }
        break;
      case "pen_down":
        this.agentCurrent = {
          actor: "agent",
          points: [[Number(event.payload.x ?? 0), Number(event.payload.y ?? 0)]],
          width: Number(event.payload.width ?? 2),
          color: (event.payload.color as number[]) ?? [31, 119, 180, 255],
        };
        break;
      case "pen_move":
        this.agentCurrent?.points.push([
          Number(event.payload.x ?? 0),
          Number(event.payload.y ?? 0),
        ]);
        break;
      case "pen_up":
        if (this.agentCurrent) {
          if (event.payload.x !== undefined) {
            this.agentCurrent.points.push([
              Number(event.payload.x),
              Number(event.payload.y ?? 0),
            ]);
          }
          this.strokes.push(this.agentCurrent);
          this.agentCurrent = null;
        }
        break;
      default:
        break;
    }
  }

  applyMessage(message: ServerMessage): void {
    switch (message.type) {
      case "event":
        this.applyAgentEvent(message.event);
        break;
      case "preview":
        this.preview = message.strokes;
        break;
      case "thumbnail":
        this.pending = {
          kind: message.kind,
          label: message.label,
          strokes: message.strokes,
          data: message.data,
        };
        break;
      case "error":
        break;
    }
  }
}
