// Wire types shared with the drawing service. The client renders and
// forwards; every number it shows comes from the server.

export type ActorName = "user" | "agent";

export type EventKindName =
  | "pen_down"
  | "pen_move"
  | "pen_up"
  | "vote_up"
  | "vote_down"
  | "mode_change"
  | "brush_change"
  | "fill"
  | "erase"
  | "undo"
  | "redo"
  | "smudge"
  | "clear_canvas"
  | "choose_color"
  | "choose_line_width"
  | "panel_toggle"
  | "request_sketch"
  | "request_image"
  | "teach_object"
  | "teach_style"
  | "place_artifact"
  | "style_applied"
  | "agent_speech"
  | "agent_animation"
  | "agent_stroke_begin"
  | "agent_stroke_end";

export interface WireEvent {
  t: number;
  actor: ActorName;
  kind: EventKindName;
  payload: Record<string, unknown>;
}

export interface EventMessage {
  type: "event";
  event: WireEvent;
}

export interface PreviewMessage {
  type: "preview";
  strokes: number[][][];
}

export interface ThumbnailMessage {
  type: "thumbnail";
  kind: "sketch" | "image";
  label?: string;
  strokes?: number[][][];
  hash?: string;
  data?: string; // base64 raster
}

export interface ErrorMessage {
  type: "error";
  detail: string;
}

export type ServerMessage = EventMessage | PreviewMessage | ThumbnailMessage | ErrorMessage;

export interface ClientEnvelope {
  type: "event";
  event: WireEvent;
}

export interface StrokeState {
  actor: ActorName;
  points: number[][];
  width: number;
  color: number[];
}
